#include "fisherclt/cumulants.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace fisherclt {

template <class Scalar>
CumulantVector<Scalar> analytic_cumulants(const Family& family, int s) {
    if (s < 2) throw std::invalid_argument("analytic_cumulants: order must be at least 2");
    if (family.kind == FamilyKind::gaussian) {
        std::vector<Scalar> g(static_cast<std::size_t>(s), Scalar(0));
        g[1] = Scalar(1);
        return CumulantVector<Scalar>(std::move(g));
    }
    MomentVector<Rational> m{family.raw_moments(s), {}};
    if constexpr (is_exact_v<Scalar>) {
        return moments_to_cumulants(m);
    } else {
        // exact raw cumulants, standardized in floating point
        const auto kappa = raw_cumulants(m);
        const double sd = std::sqrt(to_double(kappa[1]));
        std::vector<double> g{0.0, 1.0};
        for (int r = 3; r <= s; ++r) g.push_back(to_double(kappa[static_cast<std::size_t>(r - 1)]) / std::pow(sd, r));
        return CumulantVector<double>(std::move(g));
    }
}

template CumulantVector<Rational> analytic_cumulants<Rational>(const Family&, int);
template CumulantVector<double> analytic_cumulants<double>(const Family&, int);

CumulantVector<double> empirical_cumulants(std::span<const double> sample, int s) {
    if (s < 2) throw std::invalid_argument("empirical_cumulants: order must be at least 2");
    if (sample.size() < static_cast<std::size_t>(s) + 1) {
        throw std::invalid_argument("empirical_cumulants: sample size must be at least s + 1");
    }
    const double n = static_cast<double>(sample.size());
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= n;
    // central plug-in moments; cumulants of order >= 2 are shift invariant
    std::vector<double> central(static_cast<std::size_t>(s), 0.0);
    for (double x : sample) {
        const double d = x - mean;
        double pw = d;
        for (int r = 1; r <= s; ++r) {
            central[static_cast<std::size_t>(r - 1)] += pw;
            pw *= d;
        }
    }
    for (auto& c : central) c /= n;
    central[0] = 0.0;
    const double scale = std::max(std::abs(mean), 1.0);
    if (!(central[1] > 1e-24 * scale * scale)) throw std::domain_error("degenerate sample");
    return moments_to_cumulants(MomentVector<double>{central, {}});
}

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sample file '" + path + "'");
    std::vector<double> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(line.substr(first), &used));
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": not a real number");
        }
    }
    return out;
}

std::vector<IndexSolution> index_solutions(int k) {
    if (k < 1) throw std::invalid_argument("index_solutions: k must be at least 1");
    std::vector<IndexSolution> out;
    std::vector<int> r(static_cast<std::size_t>(k), 0);
    // choose r_1, r_2, ... in turn, largest first, so the output is descending lexicographic
    std::function<void(int, int)> place = [&](int l, int remaining) {
        if (l > k) {
            if (remaining == 0) {
                int j = 0;
                for (int v : r) j += v;
                out.push_back({r, j});
            }
            return;
        }
        for (int v = remaining / l; v >= 0; --v) {
            r[static_cast<std::size_t>(l - 1)] = v;
            place(l + 1, remaining - v * l);
        }
        r[static_cast<std::size_t>(l - 1)] = 0;
    };
    place(1, k);
    return out;
}

std::vector<std::vector<int>> positive_compositions(int total, int parts) {
    if (parts < 1) throw std::invalid_argument("positive_compositions: parts must be at least 1");
    std::vector<std::vector<int>> out;
    if (total < parts) return out;
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    std::function<void(int, int)> place = [&](int i, int remaining) {
        if (i == parts - 1) {
            cur[static_cast<std::size_t>(i)] = remaining;
            out.push_back(cur);
            return;
        }
        // leave at least one unit for every later slot
        for (int v = 1; v <= remaining - (parts - 1 - i); ++v) {
            cur[static_cast<std::size_t>(i)] = v;
            place(i + 1, remaining - v);
        }
    };
    place(0, total);
    return out;
}

}  // namespace fisherclt
