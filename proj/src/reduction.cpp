#include "nqp/reduction.hpp"

#include <limits>
#include <string>

#include "nqp/validate.hpp"

namespace nqp {

namespace {

// Element of largest absolute value; the negative one wins a tie.
Int max_abs_element(std::span<const Int> values)
{
    Int best = values.front();
    for (Int v : values) {
        const BigInt av = abs(BigInt(v));
        const BigInt ab = abs(BigInt(best));
        if (av > ab || (av == ab && v < best)) best = v;
    }
    return best;
}

// Lambda ||s vec||^2 + |c|^T |s vec| for the all-s vector.
Rational objective_magnitude_bound(const Rational& lambda, const std::vector<Rational>& c, Int s)
{
    const BigInt as = abs(BigInt(s));
    Rational abs_c_sum = 0;
    for (const auto& v : c) abs_c_sum += abs(v);
    return lambda * Rational(BigInt(c.size()) * as * as) + abs_c_sum * Rational(as);
}

Int narrow(const BigInt& v, const char* what)
{
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw OverflowError(std::string("reduced instance ") + what + " coefficient " + v.str() +
                            " does not fit in 64 bits");
    return static_cast<Int>(v);
}

}  // namespace

Rational TwoValueProblem::objective(std::span<const Int> t) const
{
    if (t.size() != n) throw DimensionMismatch("two-value objective: wrong length");
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rational row = c[i];
        for (std::size_t j = 0; j < n; ++j) row += q[i * n + j] * Rational(t[j]);
        total += Rational(t[i]) * row;
    }
    return total;
}

TwoValueProblem shift_scale_transform(const IntInstance& ubqp, Int s1, Int s2)
{
    if (s1 >= s2)
        throw InvalidInstance("shift_scale_transform: need s1 < s2, got " + std::to_string(s1) + ", " +
                              std::to_string(s2));
    const std::size_t n = ubqp.n;
    const BigInt d = BigInt(s2) - BigInt(s1);
    const Rational d2 = Rational(d * d);

    TwoValueProblem out;
    out.n = n;
    out.s1 = s1;
    out.s2 = s2;
    out.d = narrow(d, "level gap");
    out.q.resize(n * n);
    out.c.resize(n);

    BigInt q_total = 0;
    BigInt c_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt row_sum = 0;  // (Q 1)_i
        for (std::size_t j = 0; j < n; ++j) {
            out.q[i * n + j] = Rational(ubqp.q_at(i, j)) / d2;
            row_sum += ubqp.q_at(i, j);
        }
        q_total += row_sum;
        c_total += ubqp.c[i];
        out.c[i] = Rational(ubqp.c[i]) / Rational(d) - Rational(2 * BigInt(s1) * row_sum) / d2;
    }
    const BigInt s1b = s1;
    out.offset = Rational(s1b * s1b * q_total) / d2 - Rational(s1b * c_total) / Rational(d);
    return out;
}

BigInt penalty_g(std::span<const Int> t, Int s1, Int s2)
{
    BigInt total = 0;
    for (Int v : t) total += (BigInt(v) - s1) * (BigInt(v) - s2);
    return total;
}

PenaltyBounds compute_penalty_params(const LevelSet& levels, const TwoValueProblem& two_value)
{
    if (levels.size() < 3)
        throw InvalidInstance("compute_penalty_params: needs |S| >= 3; two levels need no penalty");
    if (levels[0] != two_value.s1 || levels[1] != two_value.s2)
        throw InvalidInstance("compute_penalty_params: s1, s2 must be the two smallest levels");

    const Int s1 = two_value.s1;
    const Int s2 = two_value.s2;
    PenaltyBounds b;
    b.lambda = gershgorin_bound<Rational, Rational>(two_value.q, two_value.n);

    const Int pair[] = {s1, s2};
    b.s_star = max_abs_element(pair);
    b.s_star_all = max_abs_element(levels.values());
    b.k = objective_magnitude_bound(b.lambda, two_value.c, b.s_star);
    b.k_prime = objective_magnitude_bound(b.lambda, two_value.c, b.s_star_all);
    b.l_h = -b.k_prime;

    const auto level_penalty = [&](std::size_t j) { return (BigInt(levels[j]) - s1) * (BigInt(levels[j]) - s2); };
    b.l_g = level_penalty(2);
    for (std::size_t j = 3; j < levels.size(); ++j) {
        if (level_penalty(j) < b.l_g)
            throw InvariantViolation("compute_penalty_params: level " + std::to_string(j) +
                                     " has a smaller penalty than s3");
    }
    if (b.l_g <= 0) throw InvariantViolation("compute_penalty_params: L_G is not positive");

    b.m = floor_rational((b.k - b.l_h) / Rational(b.l_g)) + 1;
    return b;
}

std::vector<Int> lift_solution(std::span<const Int> t, Int s1, Int s2)
{
    std::vector<Int> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == s1)
            v[i] = 0;
        else if (t[i] == s2)
            v[i] = 1;
        else
            throw NotBinary("component " + std::to_string(i) + " = " + std::to_string(t[i]) + " is neither " +
                            std::to_string(s1) + " nor " + std::to_string(s2));
    }
    return v;
}

std::vector<Int> ReductionCertificate::decode(std::span<const Int> t) const
{
    return lift_solution(t, s1, s2);
}

Rational ReductionCertificate::ubqp_objective(const BigInt& reduced_objective) const
{
    return Rational(reduced_objective - objective_offset) / Rational(scale);
}

Reduction reduce_ubqp_to_unqp(const IntInstance& ubqp, const LevelSet& levels, const ReductionOptions& options)
{
    if (ubqp.levels != LevelSet({0, 1})) throw InvalidInstance("reduce: source instance must be over {0,1}");
    if (!ubqp.psd_declared && !options.allow_indefinite)
        throw InvalidInstance("reduce: source instance is not declared PSD");
    const auto report = validate_instance(ubqp);
    for (const auto& v : report.violations) {
        if (v.severity != Severity::error) continue;
        if (v.kind == Violation::Kind::not_psd && options.allow_indefinite) continue;
        throw InvalidInstance("reduce: " + v.message);
    }

    const std::size_t n = ubqp.n;
    const Int s1 = levels[0];
    const Int s2 = levels[1];
    const TwoValueProblem two_value = shift_scale_transform(ubqp, s1, s2);

    ReductionCertificate cert;
    cert.s1 = s1;
    cert.s2 = s2;
    cert.d = two_value.d;
    cert.n = n;
    cert.level_count = levels.size();
    cert.scale = BigInt(two_value.d) * two_value.d;
    cert.two_value_offset = two_value.offset;

    BigInt m = 0;
    if (levels.size() >= 3) {
        cert.penalty = compute_penalty_params(levels, two_value);
        m = cert.penalty->m;
    }

    const BigInt d = two_value.d;
    const BigInt dd_m = cert.scale * m;
    std::vector<Int> q(n * n);
    std::vector<Int> c(n);
    BigInt q_total = 0;
    BigInt c_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt row_sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            BigInt v = ubqp.q_at(i, j);
            row_sum += v;
            if (i == j) v += dd_m;
            q[i * n + j] = narrow(v, "quadratic");
        }
        q_total += row_sum;
        c_total += ubqp.c[i];
        const BigInt ci = d * ubqp.c[i] - 2 * BigInt(s1) * row_sum - dd_m * (BigInt(s1) + s2);
        c[i] = narrow(ci, "linear");
    }

    // d^2 D, integral because D's denominators divide d^2.
    const BigInt scaled_d = BigInt(s1) * s1 * q_total - d * s1 * c_total;
    if (Rational(scaled_d) != Rational(cert.scale) * two_value.offset)
        throw InvariantViolation("reduce: scaled offset disagrees with the two-value offset");
    cert.objective_offset = -scaled_d - dd_m * BigInt(n) * s1 * s2;

    IntInstance out = make_instance(n, std::move(q), std::move(c), levels, ubqp.psd_declared);
    ensure_exact_range(out);
    return {std::move(out), std::move(cert)};
}

}  // namespace nqp
