#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace qsumm {

using Real = double;
using Complex = std::complex<Real>;

// Computational basis state of an n-qubit register. Bit i of the index is
// the value of qubit i, so qubit 0 is the least significant bit. Printed
// bitstrings show qubit 0 first.
using BasisIndex = std::uint64_t;

template <class Scalar>
using vec_type = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using mat_type = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = vec_type<Real>;
using RealMatrix = mat_type<Real>;
using ComplexVector = vec_type<Complex>;

inline int hamming_weight(BasisIndex x) { return std::popcount(x); }

inline std::string format_bitstring(BasisIndex x, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int i = 0; i < n_qubits; ++i) {
        if ((x >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

// Compares basis states by their printed bitstring (qubit 0 first).
inline bool bitstring_less(BasisIndex a, BasisIndex b, int n_qubits) {
    const BasisIndex mask = (n_qubits >= 64) ? ~BasisIndex{0} : ((BasisIndex{1} << n_qubits) - 1);
    const BasisIndex diff = (a ^ b) & mask;
    if (diff == 0) return false;
    const int lowest = std::countr_zero(diff);
    return ((a >> lowest) & 1u) == 0;
}

}  // namespace qsumm
