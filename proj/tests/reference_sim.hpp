#pragma once

// Dense-matrix reference simulator used as an independent oracle: every gate
// becomes an explicit 2^n x 2^n matrix applied by Eigen matvec, and
// objective values come from direct evaluation of the problem sums. Nothing
// here shares code with the library's kernels or diagonal tables.

#include <functional>

#include <Eigen/Dense>

#include "qsumm/problem.hpp"
#include "qsumm/statevector.hpp"

namespace qsumm::testing {

using ComplexMatrix = Eigen::MatrixXcd;

ComplexMatrix embedded_gate_matrix(const Gate& gate, int n_qubits);

Real objective_raw_reference(const ProblemInstance& instance, BasisIndex x);
Real objective_penalized_reference(const ProblemInstance& instance, BasisIndex x);

ComplexVector run_circuit_reference(const Circuit& circuit, const ProblemInstance* instance);

Real expectation_reference(const ComplexVector& amplitudes,
                           const std::function<Real(BasisIndex)>& f);

}  // namespace qsumm::testing
