#pragma once

#include <string>
#include <vector>

#include "latspec/spectral.hpp"

namespace latspec {

enum class OffDiagonalKind { zero, pair_sum, pair_plus_line_sum };

struct NortonPairFailure {
    long tau = 0;
    long sigma = 0;
    std::string what;
};

/// Outcome of the pairwise product verification on V_1.
struct NortonProductReport {
    Family family;
    Rational diagonal_coefficient;  // coefficient on tau_check in tau * tau
    OffDiagonalKind off_kind = OffDiagonalKind::zero;
    Rational off_pair_coefficient;      // on (tau_check + sigma_check)
    Rational off_line_sum_coefficient;  // on the sum over atoms below the join
    /// False when the off-diagonal closed form is out of scope (k = 1);
    /// the coefficients above then record what the numeric product showed.
    bool closed_form_asserted = true;
    long pairs_checked = 0;
    bool verified = false;
    std::vector<NortonPairFailure> failures;
    /// "nonassociative" (witness found), "associative" (exhausted or all
    /// products zero), or "undetermined" (search capped).
    std::string associativity;
};

/// The commutative nonassociative product f * g = pi_1(fg) on the
/// eigenspace V_1, with the frame-based projection as the working pi_1 and
/// the Gram-Schmidt projection as its cross-check.
class NortonAlgebra {
public:
    explicit NortonAlgebra(SpectralDecomposition& spectral);

    const SpectralDecomposition& spectral() const { return spectral_; }

    /// Projection of the atom indicator onto V_1, in closed form:
    /// iota_tau - (a_1/|X|) ones.
    FunctionVector tau_check(const LatticeElement& atom) const;
    const FunctionVector& tau_check_at(long atom_position) const {
        return tau_checks_[static_cast<std::size_t>(atom_position)];
    }

    /// Frame expansion of the projection onto V_1:
    /// sum_tau <iota_tau, h>/mu_1 tau_check.
    FunctionVector pi1_frame(const FunctionVector& h) const;

    /// pi_1 of the pointwise product. Rejects inputs that the projection
    /// does not fix (membership in V_1 is the precondition).
    FunctionVector norton_product(const FunctionVector& f, const FunctionVector& g) const;

    /// The closed-form product of two projected atoms. Off-diagonal forms
    /// require k >= 2 for the subset and subspace families.
    FunctionVector closed_form_product(const LatticeElement& tau, const LatticeElement& sigma) const;

    Rational diagonal_coefficient() const;

    /// Checks every atom pair (numeric product vs closed form), the
    /// product-reduction and join-inner-product identities, the frame/GS
    /// projection agreement on all vertex indicators, and the structural
    /// invariants of the algebra.
    NortonProductReport verify();

private:
    FunctionVector product_unchecked(const FunctionVector& f, const FunctionVector& g) const;
    bool in_v1(const FunctionVector& f) const;

    SpectralDecomposition& spectral_;
    const GraphLattice& lattice_;
    long atom_count_ = 0;
    Rational mu1_;
    Rational atom_share_;  // a_1 / |X|
    std::vector<FunctionVector> tau_checks_;
};

}  // namespace latspec
