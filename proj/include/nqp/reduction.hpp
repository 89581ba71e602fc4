#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nqp/errors.hpp"
#include "nqp/instance.hpp"
#include "nqp/rational.hpp"

namespace nqp {

/// Binary problem rewritten over {s1, s2}^N:
/// H(t) + offset == UBQP((t - s1) / d) for every t in {s1, s2}^N,
/// where H(t) = t^T q t + t^T c.
struct TwoValueProblem {
    std::size_t n = 0;
    std::vector<Rational> q;  ///< Q / d^2
    std::vector<Rational> c;  ///< c / d - 2 Q s1vec / d^2
    Rational offset;          ///< s1vec^T Q s1vec / d^2 - s1vec^T c / d
    Int s1 = 0;
    Int s2 = 1;
    Int d = 1;

    Rational objective(std::span<const Int> t) const;
};

/// Bounds that size the penalty weight M.
struct PenaltyBounds {
    Rational lambda;   ///< Gershgorin bound on the spectrum of Q/d^2
    Int s_star = 0;    ///< element of {s1, s2} with largest |s| (negative on ties)
    Int s_star_all = 0;///< element of S with largest |s| (negative on ties)
    Rational k;        ///< upper bound on H over {s1, s2}^N
    Rational k_prime;  ///< upper bound on |H| over S^N
    Rational l_h;      ///< -k_prime
    BigInt l_g;        ///< (s3 - s1)(s3 - s2)
    BigInt m;          ///< floor((k - l_h) / l_g) + 1
};

/// Everything needed to reconcile objective values across the reduction and
/// to decode reduced solutions back to binary vectors.
///
/// For t in {s1, s2}^N the reduced objective satisfies
///   reduced(t) == scale * ubqp(decode(t)) + objective_offset.
struct ReductionCertificate {
    Int s1 = 0;
    Int s2 = 1;
    Int d = 1;
    std::size_t n = 0;
    std::size_t level_count = 2;
    BigInt scale{1};            ///< d^2
    Rational two_value_offset;  ///< D, dropped when passing to the two-value form
    std::optional<PenaltyBounds> penalty;  ///< absent when |S| == 2
    BigInt objective_offset;    ///< -d^2 D - d^2 M N s1 s2

    std::vector<Int> decode(std::span<const Int> t) const;
    Rational ubqp_objective(const BigInt& reduced_objective) const;
};

struct Reduction {
    IntInstance instance;
    ReductionCertificate certificate;
};

struct ReductionOptions {
    /// Accept UBQP inputs without a PSD declaration. The bounds remain valid
    /// for indefinite Q because the Gershgorin bound covers |lambda_min| too.
    bool allow_indefinite = false;
};

/// max_i sum_j |q_ij|; bounds the spectral radius of a symmetric matrix.
/// Throws InvalidInstance if q is not symmetric.
template <class Acc, class T>
Acc gershgorin_bound(std::span<const T> q, std::size_t n)
{
    if (q.size() != n * n) throw DimensionMismatch("gershgorin_bound: matrix is not n x n");
    Acc best{0};
    for (std::size_t i = 0; i < n; ++i) {
        Acc row{0};
        for (std::size_t j = 0; j < n; ++j) {
            if (q[i * n + j] != q[j * n + i]) throw InvalidInstance("gershgorin_bound: matrix is not symmetric");
            const T& v = q[i * n + j];
            row += Acc(v < T(0) ? T(-v) : v);
        }
        if (row > best) best = row;
    }
    return best;
}

/// Rewrites a binary instance over {s1, s2}. Requires s1 < s2.
TwoValueProblem shift_scale_transform(const IntInstance& ubqp, Int s1, Int s2);

/// sum_i (t_i - s1)(t_i - s2).
BigInt penalty_g(std::span<const Int> t, Int s1, Int s2);

/// Requires |S| >= 3 with s1, s2 the two smallest levels of S.
PenaltyBounds compute_penalty_params(const LevelSet& levels, const TwoValueProblem& two_value);

/// UBQP over {0,1} -> exact-integer UNQP over `levels`, with certificate.
Reduction reduce_ubqp_to_unqp(const IntInstance& ubqp, const LevelSet& levels,
                              const ReductionOptions& options = {});

/// s1 -> 0, s2 -> 1; throws NotBinary for any other component.
std::vector<Int> lift_solution(std::span<const Int> t, Int s1, Int s2);

}  // namespace nqp
