#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qindel/qsim.hpp"

namespace qindel {

/// The l^2 generalized Pauli operators X^a Z^b on one site of dimension l,
/// where X is the cyclic shift and Z the clock matrix. They are unitary and
/// form a basis of the full operator space on the site.
struct ErrorBasis {
  int l = 0;
  std::vector<Eigen::MatrixXcd> ops;  // index a*l + b, identity first
};

Eigen::MatrixXcd shift_matrix(int l);  // X |j> = |j+1 mod l>
Eigen::MatrixXcd clock_matrix(int l);  // Z |j> = w^j |j>, w = exp(2 pi i / l)
ErrorBasis generalized_paulis(int l);

/// op acting on one site, padded with identities to the full space of spec.
Eigen::MatrixXcd site_operator(const QuditSpec& spec, int site,
                               const Eigen::MatrixXcd& op);

/// Identity plus every non-identity generalized Pauli at every single site.
std::vector<Eigen::MatrixXcd> weight_one_errors(const QuditSpec& spec);

/// An encoding isometry V : (C^l)^k -> (C^l)^{n0} with a declared erasure
/// capability. Stabilizer generators are optional; when present (and
/// Hermitian with +-1 spectrum, as for the built-in code) decoding uses
/// syndrome measurement, otherwise the canonical recovery construction.
struct CodeIsometry {
  int n0 = 0;
  int l = 0;
  int k = 0;
  Eigen::MatrixXcd encoder;  // l^{n0} x l^k, V† V = I
  int max_erasures = 0;
  std::vector<Eigen::MatrixXcd> stabilizers;
  std::string name;

  QuditSpec physical_spec() const { return QuditSpec::uniform(n0, l); }
  QuditSpec logical_spec() const { return QuditSpec::uniform(k, l); }
  Eigen::MatrixXcd code_projector() const { return encoder * encoder.adjoint(); }

  /// Shape and isometry checks; throws std::invalid_argument on failure.
  void validate(double tol = kProjTol) const;
};

/// The five-qubit distance-3 code (n0 = 5, l = 2, k = 1), built by
/// projecting onto the joint +1 eigenspace of the four cyclic XZZXI
/// stabilizers. Corrects one arbitrary single-site error and two erasures.
CodeIsometry five_qudit_code();

/// V |mu>. mu must be on the logical spec.
PureState encode(const CodeIsometry& code, const PureState& mu);

/// Largest deviation of V† E_a† E_b V from a scalar matrix over all pairs,
/// i.e. the numerical residual of the Knill-Laflamme conditions.
double kl_residual(const CodeIsometry& code,
                   const std::vector<Eigen::MatrixXcd>& errors);
bool kl_verify(const CodeIsometry& code,
               const std::vector<Eigen::MatrixXcd>& errors,
               double tol = kProjTol);

/// Recovery Kraus operators (logical x physical) for a correctable error
/// set: diagonalize the KL matrix, orthonormalize the rotated errors into
/// isometries W_c and return the W_c†. Exact on states reached from the
/// code space through span{errors}. Throws if KL fails.
std::vector<Eigen::MatrixXcd> canonical_recovery(
    const CodeIsometry& code, const std::vector<Eigen::MatrixXcd>& errors);

/// Corrects at most one single-site channel error and reads out the logical
/// state: syndrome measurement (sampled by seed) plus the looked-up inverse
/// Pauli. The _mixed variant follows every syndrome branch and mixes the
/// results, which is deterministic and trace-equivalent.
Ensemble correct_single_error(const CodeIsometry& code, const Ensemble& rho,
                              std::uint64_t rng_seed);
Ensemble correct_single_error_mixed(const CodeIsometry& code, const Ensemble& rho);

/// Erasure decoding at known positions J: the erased sites must have been
/// re-initialized to |0>. Deterministic (all syndrome branches mixed).
Ensemble correct_erasures(const CodeIsometry& code, const Ensemble& rho,
                          const IndexSet& J);

}  // namespace qindel
