#pragma once

// Coefficients c_j of the 1/n expansion of the relative Fisher information
// of normalized sums,
//
//   c_j = sum_{k=2}^{2j} (-1)^k sum_{r_1+..+r_k = 2j, r_i >= 1}
//           int (q_{r1}' + x q_{r1}) (q_{r2}' + x q_{r2}) q_{r3} ... q_{rk} dx / phi^{k-1},
//
// computed exactly by polynomial algebra. The same sum with 2j replaced by an
// arbitrary j gives the coefficient a_j of n^{-j/2}; a second, independent
// route expands sum_m (-1)^m int w_s^2 u_s^m / phi as a series in n^{-1/2}.

#include "fisherclt/cumulants.hpp"
#include "fisherclt/edgeworth.hpp"
#include "fisherclt/gauss_poly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisherclt {

/// P(x) phi(x)^phi_power. Products add powers; integration requires power 1.
template <class Scalar>
struct PhiWeighted {
    Poly<Scalar> P;
    int phi_power = 1;

    friend PhiWeighted operator*(const PhiWeighted& a, const PhiWeighted& b) {
        return {a.P * b.P, a.phi_power + b.phi_power};
    }
    PhiWeighted divided_by_phi(int times) const { return {P, phi_power - times}; }
};

template <class Scalar>
Scalar integrate(const PhiWeighted<Scalar>& f) {
    if (f.phi_power != 1) {
        throw std::logic_error("integrate: integrand carries phi^" + std::to_string(f.phi_power) +
                               ", expected exactly one Gaussian factor");
    }
    return integrate_against_gaussian(f.P);
}

namespace detail {

template <class Scalar>
struct CorrectionPolys {
    std::vector<Poly<Scalar>> q;      // index r -> polynomial of q_r (index 0 unused)
    std::vector<Poly<Scalar>> score;  // index r -> polynomial of q_r' + x q_r
};

template <class Scalar>
CorrectionPolys<Scalar> correction_polys(const CumulantVector<Scalar>& c, int rmax) {
    CorrectionPolys<Scalar> out;
    out.q.resize(static_cast<std::size_t>(rmax) + 1);
    out.score.resize(static_cast<std::size_t>(rmax) + 1);
    for (int r = 1; r <= rmax; ++r) {
        out.q[static_cast<std::size_t>(r)] = build_qk(c, r).P;
        out.score[static_cast<std::size_t>(r)] = build_q_score(c, r).P;
    }
    return out;
}

inline void require_order(int have, int need, const char* what) {
    if (have < need) {
        throw std::invalid_argument(std::string(what) + ": needs cumulants through order " + std::to_string(need) +
                                    ", have " + std::to_string(have));
    }
}

}  // namespace detail

/// Coefficient a_j of n^{-j/2} by the composition sum. Needs gamma_3..gamma_{j+1}.
template <class Scalar>
Scalar expansion_term(const CumulantVector<Scalar>& c, int j) {
    if (j < 2) throw std::invalid_argument("expansion_term: j must be at least 2");
    detail::require_order(c.order(), j + 1, "expansion_term");
    const auto polys = detail::correction_polys(c, j - 1);

    Scalar total(0);
    for (int k = 2; k <= j; ++k) {
        Scalar partial(0);
        for (const auto& r : positive_compositions(j, k)) {
            bool vanishes = false;
            for (std::size_t i = 0; i < r.size() && !vanishes; ++i) {
                const auto& f = i < 2 ? polys.score[r[i]] : polys.q[r[i]];
                vanishes = f.is_zero();
            }
            if (vanishes) continue;
            PhiWeighted<Scalar> integrand{polys.score[r[0]], 1};
            integrand = integrand * PhiWeighted<Scalar>{polys.score[r[1]], 1};
            for (std::size_t i = 2; i < r.size(); ++i) integrand = integrand * PhiWeighted<Scalar>{polys.q[r[i]], 1};
            partial += integrate(integrand.divided_by_phi(k - 1));
        }
        if (k % 2 == 0) {
            total += partial;
        } else {
            total -= partial;
        }
    }
    return total;
}

/// Coefficient of n^{-j/2} in sum_{m>=0} (-1)^m int w_s^2 u_s^m dx / phi, by
/// truncated power-series arithmetic in n^{-1/2}.
template <class Scalar>
Scalar expansion_term_series(const CumulantVector<Scalar>& c, int j) {
    if (j < 2) throw std::invalid_argument("expansion_term_series: j must be at least 2");
    detail::require_order(c.order(), j + 1, "expansion_term_series");
    const auto polys = detail::correction_polys(c, j - 1);

    using Series = std::vector<Poly<Scalar>>;  // index = power of n^{-1/2}
    const auto truncated_product = [j](const Series& a, const Series& b) {
        Series out(static_cast<std::size_t>(j) + 1);
        for (int p = 0; p <= j; ++p) {
            if (a[p].is_zero()) continue;
            for (int q = 0; p + q <= j; ++q) {
                if (!b[q].is_zero()) out[p + q] += a[p] * b[q];
            }
        }
        return out;
    };

    Series w(static_cast<std::size_t>(j) + 1);  // each term carries one phi
    Series u(static_cast<std::size_t>(j) + 1);  // polynomial only
    for (int r = 1; r <= j - 1; ++r) {
        w[r] = polys.score[r];
        u[r] = polys.q[r];
    }
    // w^2 / phi carries a single phi
    Series term = truncated_product(w, w);
    Series total = term;
    for (int m = 1; m <= j - 2; ++m) {
        term = truncated_product(term, u);
        for (int p = 0; p <= j; ++p) {
            if (m % 2 == 0) {
                total[p] += term[p];
            } else {
                total[p] -= term[p];
            }
        }
    }
    return integrate(PhiWeighted<Scalar>{total[j], 1});
}

/// c_j = a_{2j}; depends on gamma_3..gamma_{2j+1} only.
template <class Scalar>
Scalar compute_cj(const CumulantVector<Scalar>& c, int j) {
    if (j < 1) throw std::invalid_argument("compute_cj: j must be at least 1");
    detail::require_order(c.order(), 2 * j + 1, "compute_cj");
    return expansion_term(c, 2 * j);
}

/// Leading coefficient gamma_k^2 / (k-1)! when gamma_3..gamma_{k-1} vanish; it
/// multiplies n^{-(k-2)}.
template <class Scalar>
Scalar leading_coefficient(int k, const Scalar& gamma_k) {
    if (k < 3) throw std::invalid_argument("leading_coefficient: k must be at least 3");
    return gamma_k * gamma_k / factorial<Scalar>(k - 1);
}

template <class Scalar>
struct ExpansionCoefficients {
    int J = 0;              // floor((s - 2) / 2)
    std::vector<Scalar> c;  // c_1 .. c_J
};

template <class Scalar>
ExpansionCoefficients<Scalar> compute_expansion_coefficients(const CumulantVector<Scalar>& cum, int s) {
    if (s < 2) throw std::invalid_argument("compute_expansion_coefficients: s must be at least 2");
    detail::require_order(cum.order(), s, "compute_expansion_coefficients");
    ExpansionCoefficients<Scalar> out;
    out.J = (s - 2) / 2;
    for (int j = 1; j <= out.J; ++j) out.c.push_back(compute_cj(cum, j));
    return out;
}

/// sum_{j=1}^{J} c_j n^{-j}
template <class Scalar>
double predict_distance(const ExpansionCoefficients<Scalar>& coeffs, int n) {
    if (n < 1) throw std::invalid_argument("predict_distance: n must be at least 1");
    double total = 0.0;
    for (int j = 1; j <= coeffs.J; ++j) {
        total += to_double(coeffs.c[static_cast<std::size_t>(j - 1)]) * std::pow(static_cast<double>(n), -j);
    }
    return total;
}

}  // namespace fisherclt
