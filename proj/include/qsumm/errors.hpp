#pragma once

#include <stdexcept>
#include <string>

namespace qsumm {

// One class per recoverable failure mode; the CLI maps each to a distinct
// process exit code.
enum class Errc : int {
    empty_document = 2,
    word_not_in_sentence = 3,
    dimension_mismatch = 4,
    zero_vector = 5,
    parse_error = 6,
    count_mismatch = 7,
    infeasible_constraint = 8,
    too_large = 9,
    too_many_qubits = 10,
    length_mismatch = 11,
    index_out_of_range = 12,
    param_mismatch = 13,
    empty_input = 14,
    no_feasible_point = 15,
    degenerate_range = 16,
    empty_reference = 17,
    no_in_constraint_mass = 18,
    io_error = 19,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::empty_document: return "EmptyDocument";
        case Errc::word_not_in_sentence: return "WordNotInSentence";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::zero_vector: return "ZeroVector";
        case Errc::parse_error: return "ParseError";
        case Errc::count_mismatch: return "CountMismatch";
        case Errc::infeasible_constraint: return "InfeasibleConstraint";
        case Errc::too_large: return "TooLarge";
        case Errc::too_many_qubits: return "TooManyQubits";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::param_mismatch: return "ParamMismatch";
        case Errc::empty_input: return "EmptyInput";
        case Errc::no_feasible_point: return "NoFeasiblePoint";
        case Errc::degenerate_range: return "DegenerateRange";
        case Errc::empty_reference: return "EmptyReference";
        case Errc::no_in_constraint_mass: return "NoInConstraintMass";
        case Errc::io_error: return "IoError";
    }
    return "Error";
}

}  // namespace qsumm
