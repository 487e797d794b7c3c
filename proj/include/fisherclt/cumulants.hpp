#pragma once

// Standardized cumulants of the summand distribution: the moment/cumulant
// recursion, the built-in analytic catalog, plug-in estimation from samples,
// and the two index enumerations used by the expansion formulas.

#include "fisherclt/families.hpp"
#include "fisherclt/rational.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisherclt {

/// Raw moments m_1..m_s (index 0 holds m_1).
template <class Scalar>
struct MomentVector {
    std::vector<Scalar> raw;
    std::vector<double> absolute;  // beta_1..beta_s when known, may be empty

    int order() const { return static_cast<int>(raw.size()); }
    const Scalar& operator()(int r) const { return raw.at(static_cast<std::size_t>(r - 1)); }
};

/// gamma_1..gamma_s of a standardized variable: gamma_1 = 0, gamma_2 = 1.
template <class Scalar>
class CumulantVector {
public:
    CumulantVector() = default;
    explicit CumulantVector(std::vector<Scalar> gamma) : gamma_(std::move(gamma)) {
        if (gamma_.size() < 2) throw std::invalid_argument("CumulantVector: order must be at least 2");
        if (gamma_[0] != Scalar(0) || gamma_[1] != Scalar(1)) {
            throw std::invalid_argument("CumulantVector: not standardized (need gamma_1 = 0, gamma_2 = 1)");
        }
    }

    /// Builds (0, 1, higher[0], higher[1], ...), i.e. gamma_3 onwards.
    static CumulantVector from_higher(const std::vector<Scalar>& higher) {
        std::vector<Scalar> g{Scalar(0), Scalar(1)};
        g.insert(g.end(), higher.begin(), higher.end());
        return CumulantVector(std::move(g));
    }

    int order() const { return static_cast<int>(gamma_.size()); }

    /// gamma_r, 1-based.
    const Scalar& operator()(int r) const {
        if (r < 1 || r > order()) {
            throw std::out_of_range("CumulantVector: gamma_" + std::to_string(r) + " not available (order " +
                                    std::to_string(order()) + ")");
        }
        return gamma_[static_cast<std::size_t>(r - 1)];
    }

    const std::vector<Scalar>& values() const { return gamma_; }

    /// Keeps gamma_1..gamma_s.
    CumulantVector truncated(int s) const {
        if (s < 2 || s > order()) throw std::invalid_argument("CumulantVector::truncated: bad order");
        return CumulantVector(std::vector<Scalar>(gamma_.begin(), gamma_.begin() + s));
    }

    template <class Other>
    CumulantVector<Other> cast() const {
        std::vector<Other> out;
        for (const auto& g : gamma_) {
            if constexpr (std::is_same_v<Other, double>) {
                out.push_back(to_double(g));
            } else {
                out.push_back(Other(g));
            }
        }
        return CumulantVector<Other>(std::move(out));
    }

    friend bool operator==(const CumulantVector& a, const CumulantVector& b) { return a.gamma_ == b.gamma_; }

private:
    std::vector<Scalar> gamma_;
};

namespace detail {

template <class Scalar>
Scalar binomial(int n, int k) {
    if (k < 0 || k > n) return Scalar(0);
    Scalar b(1);
    for (int i = 1; i <= k; ++i) {
        b *= Scalar(n - k + i);
        b /= Scalar(i);
    }
    return b;
}

/// sigma^r where variance = sigma^2; exact for rationals or throws.
template <class Scalar>
Scalar sigma_power(const Scalar& variance, int r) {
    if constexpr (is_exact_v<Scalar>) {
        if (r % 2 == 0) return power(variance, r / 2);
        auto root = exact_sqrt(variance);
        if (!root) {
            throw std::invalid_argument(
                "moments_to_cumulants: odd cumulant needs an irrational scale; use floating-point scalars");
        }
        return power(*root, r);
    } else {
        return std::pow(std::sqrt(variance), r);
    }
}

}  // namespace detail

/// Raw cumulants kappa_1..kappa_s via
/// kappa_r = m_r - sum_{j=1}^{r-1} C(r-1, j-1) kappa_j m_{r-j}.
template <class Scalar>
std::vector<Scalar> raw_cumulants(const MomentVector<Scalar>& m) {
    const int s = m.order();
    std::vector<Scalar> kappa(static_cast<std::size_t>(s), Scalar(0));
    auto moment = [&](int r) { return r == 0 ? Scalar(1) : m(r); };
    for (int r = 1; r <= s; ++r) {
        Scalar k = moment(r);
        for (int j = 1; j < r; ++j) {
            k -= detail::binomial<Scalar>(r - 1, j - 1) * kappa[static_cast<std::size_t>(j - 1)] * moment(r - j);
        }
        kappa[static_cast<std::size_t>(r - 1)] = k;
    }
    return kappa;
}

/// Cumulants of (X - m_1) / sqrt(m_2 - m_1^2).
template <class Scalar>
CumulantVector<Scalar> moments_to_cumulants(const MomentVector<Scalar>& m) {
    if (m.order() < 2) throw std::invalid_argument("moments_to_cumulants: need at least two moments");
    const auto kappa = raw_cumulants(m);
    const Scalar variance = kappa[1];
    if (!(variance > Scalar(0))) throw std::domain_error("degenerate distribution");
    std::vector<Scalar> gamma{Scalar(0), Scalar(1)};
    for (int r = 3; r <= m.order(); ++r) {
        const Scalar& k = kappa[static_cast<std::size_t>(r - 1)];
        gamma.push_back(k == Scalar(0) ? Scalar(0) : Scalar(k / detail::sigma_power(variance, r)));
    }
    return CumulantVector<Scalar>(std::move(gamma));
}

/// Exact standardized cumulants up to order s for a built-in family.
/// Rational instantiation throws for families whose odd cumulants are irrational.
template <class Scalar>
CumulantVector<Scalar> analytic_cumulants(const Family& family, int s);

/// Plug-in (biased) moments followed by moments_to_cumulants.
CumulantVector<double> empirical_cumulants(std::span<const double> sample, int s);

/// One line per real; blank lines and '#' comments are skipped.
std::vector<double> read_sample_file(const std::string& path);

struct IndexSolution {
    std::vector<int> r;  // r_1..r_k
    int j = 0;           // r_1 + ... + r_k
};

/// Non-negative solutions of r_1 + 2 r_2 + ... + k r_k = k, in descending
/// lexicographic order of (r_1, ..., r_k).
std::vector<IndexSolution> index_solutions(int k);

/// Ordered tuples of `parts` positive integers summing to `total`, in
/// ascending lexicographic order. Empty when total < parts.
std::vector<std::vector<int>> positive_compositions(int total, int parts);

}  // namespace fisherclt
