#pragma once

#include "cohest/majorization.hpp"
#include "cohest/states.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace cohest {

enum class Measure { Cr, Cl1, Cl2, Cg, CR, Cf, Cl1tilde };

inline constexpr std::array<Measure, 7> all_measures = {Measure::Cr, Measure::Cl1, Measure::Cl2, Measure::Cg,
                                                        Measure::CR, Measure::Cf, Measure::Cl1tilde};

std::string_view to_string(Measure m);

enum class Family { NoisyGHZ, NoisyCluster };

std::string_view to_string(Family f);

// ---- exact values -------------------------------------------------------

// Relative entropy of coherence in bits: S(diag) - S(spectrum).
double exact_cr(const DensityMatrix& rho);
// Sum of absolute off-diagonal entries.
double exact_cl1(const DensityMatrix& rho);
// Sum of squared off-diagonal moduli, cross-checked against the linear-entropy
// difference S_L(diag) - S_L(spectrum). Throws InternalMismatch beyond 1e-7.
double exact_cl2(const DensityMatrix& rho);
// Geometric measure of a pure state: 1 - max_i |psi_i|^2.
double exact_cg_pure(const PureState& psi);

// Closed forms for (1 - eta)|psi><psi| + eta I/d with psi = GHZ_n or the
// linear cluster C_n. Absent where no closed form is known (C_g for eta > 0,
// and the convex-roof measures for eta > 0).
std::optional<double> family_exact(Family family, std::size_t n, double eta, Measure measure);

// ---- spectrum-estimation lower bounds ----------------------------------

// S_VN(d) - S_VN(d v meet), clamped at 0.
double lower_cr(const DiagonalDistribution& diag, const SortedDistribution& meet);
// S_L(d) - S_L(d v meet), clamped at 0.
double lower_cl2(const DiagonalDistribution& diag, const SortedDistribution& meet);

// u: descending 2 d_i d_j / l2 over pairs i < j.
// vhat: u truncated to unit mass (u_1..u_M, remainder 1 - sum, then zeros).
// uhat: the sequence dividing vhat in the robustness sum. It equals vhat on
// its support, so in particular uhat = (1, 0, ...) whenever u_1 >= 1.
struct UVSequence {
    std::vector<double> u;
    std::vector<double> vhat;
    std::vector<double> uhat;
    std::size_t M = 0;
};

// Throws ZeroL2 when l2 <= 1e-12.
UVSequence uv_sequence(const DiagonalDistribution& diag, double l2);

struct L1RobustnessBounds {
    double cl1;
    double cr; // robustness of coherence
};

// sqrt(2 l2) sum sqrt(vhat_k) and sqrt(2 l2) sum vhat_k / sqrt(uhat_k).
L1RobustnessBounds lower_cl1_cr_pair(const DiagonalDistribution& diag, double l2);

// ((d-1)/d) (1 - sqrt(1 - d/(d-1) l2)). Throws L2OutOfRange outside
// [0, (d-1)/d + 1e-12].
double lower_cg(double l2, std::size_t d);

struct ConvexRoofBounds {
    double cf;
    double cl1tilde;
};

// Convex-roof measures dominate their distance-based counterparts.
ConvexRoofBounds convex_roof_passthrough(double l_cr, double l_cl1);

enum class Witness { W1, W3 };

// -Tr(W rho) with W3 = I/2 - |T><T| and W1 = Delta(|T><T|) - |T><T|, where
// T is the target state (GHZ_n by default).
double witness_bound(const DensityMatrix& rho, Witness which, const PureState& target);
double witness_bound(const DensityMatrix& rho, Witness which, std::size_t n);

// lower / exact. Throws ExactIsZero when exact <= 1e-12.
double tightness(double exact, double lower);

// Every spectrum-estimation bound from a diagonal and a meet.
struct BoundSet {
    double cr = 0.0;
    double cl1 = 0.0;
    double cl2 = 0.0;
    double cg = 0.0;
    double robustness = 0.0;
    double cf = 0.0;
    double cl1tilde = 0.0;

    double operator[](Measure m) const;
};

BoundSet spectrum_bounds(const DiagonalDistribution& diag, const SortedDistribution& meet);

struct CoherenceReport {
    Measure measure;
    std::optional<double> exact;
    double lower_bound = 0.0;
    std::optional<double> ratio;
    // exact holds C_r (for C_f) or C_l1 (for the l1 convex roof) rather than
    // the measure itself.
    bool surrogate = false;
};

// Reports for every measure. When exact values are absent for C_f or the
// l1 convex roof, C_r / C_l1 stand in and the report is marked surrogate.
std::vector<CoherenceReport> make_reports(const BoundSet& bounds,
                                          const std::array<std::optional<double>, 7>& exact);

} // namespace cohest
