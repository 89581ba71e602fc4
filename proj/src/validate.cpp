#include "nqp/validate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "nqp/rational.hpp"

namespace nqp {

namespace {

// Fraction-free Gaussian elimination; exact for integer matrices.
BigInt bareiss_determinant(std::vector<BigInt> a, std::size_t k)
{
    if (k == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t p = 0; p + 1 < k; ++p) {
        if (a[p * k + p] == 0) {
            std::size_t swap = p + 1;
            while (swap < k && a[swap * k + p] == 0) ++swap;
            if (swap == k) return 0;
            for (std::size_t j = 0; j < k; ++j) std::swap(a[p * k + j], a[swap * k + j]);
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < k; ++i) {
            for (std::size_t j = p + 1; j < k; ++j)
                a[i * k + j] = (a[i * k + j] * a[p * k + p] - a[i * k + p] * a[p * k + j]) / prev;
        }
        prev = a[p * k + p];
    }
    return sign * a[(k - 1) * k + (k - 1)];
}

double inf_norm(std::span<const double> q, std::size_t n)
{
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(q[i * n + j]);
        best = std::max(best, row);
    }
    return best;
}

template <class T>
std::vector<double> as_doubles(const std::vector<T>& v)
{
    return std::vector<double>(v.begin(), v.end());
}

}  // namespace

bool ValidationReport::ok() const
{
    return std::none_of(violations.begin(), violations.end(),
                        [](const Violation& v) { return v.severity == Severity::error; });
}

std::optional<unsigned long long> find_negative_principal_minor(std::span<const Int> q, std::size_t n)
{
    const unsigned long long subsets = 1ULL << n;
    std::vector<std::size_t> idx;
    std::vector<BigInt> sub;
    for (unsigned long long mask = 1; mask < subsets; ++mask) {
        idx.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ULL << i)) idx.push_back(i);
        const std::size_t k = idx.size();
        sub.assign(k * k, 0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) sub[a * k + b] = q[idx[a] * n + idx[b]];
        if (bareiss_determinant(sub, k) < 0) return mask;
    }
    return std::nullopt;
}

double smallest_eigenvalue(std::span<const double> q, std::size_t n)
{
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = q[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

template <class T>
ValidationReport validate_instance(const Instance<T>& inst)
{
    ValidationReport report;
    const std::size_t n = inst.n;

    for (const auto& problem : LevelSet::check(inst.levels.values()))
        report.violations.push_back({Violation::Kind::level_set, Severity::error, "level set " + problem, {}});

    bool symmetric = true;
    for (std::size_t i = 0; i < n && symmetric; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (inst.q_at(i, j) != inst.q_at(j, i)) {
                report.violations.push_back({Violation::Kind::asymmetric, Severity::error,
                                             "Q is not symmetric at (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ")",
                                             std::pair{i, j}});
                symmetric = false;
                break;
            }
        }
    }

    if (!inst.psd_declared || !symmetric) return report;

    if constexpr (std::is_same_v<T, Int>) {
        if (n <= exact_psd_max_dim) {
            if (auto mask = find_negative_principal_minor(inst.q, n)) {
                std::string rows;
                for (std::size_t i = 0; i < n; ++i)
                    if (*mask & (1ULL << i)) rows += (rows.empty() ? "" : ",") + std::to_string(i);
                report.violations.push_back({Violation::Kind::not_psd, Severity::error,
                                             "Q declared PSD but principal minor on {" + rows + "} is negative",
                                             {}});
            }
            return report;
        }
    }

    const auto qd = as_doubles(inst.q);
    const double lambda_min = smallest_eigenvalue(qd, n);
    const double tol = 1e-8 * inf_norm(qd, n);
    if (lambda_min < -tol)
        report.violations.push_back({Violation::Kind::psd_suspect, Severity::warning,
                                     "Q declared PSD but smallest eigenvalue estimate is " +
                                         std::to_string(lambda_min),
                                     {}});
    return report;
}

template ValidationReport validate_instance(const IntInstance&);
template ValidationReport validate_instance(const RealInstance&);

}  // namespace nqp
