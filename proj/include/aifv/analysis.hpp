#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aifv/codec.hpp"
#include "aifv/codetree.hpp"
#include "aifv/error.hpp"

namespace aifv {

inline constexpr double probability_tolerance = 1e-12;

class SourceDistribution {
public:
    explicit SourceDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw Error(Errc::invalid_distribution, "distribution over an empty alphabet");
        double sum = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0) || !std::isfinite(p)) throw Error(Errc::invalid_distribution, "negative or non-finite probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > probability_tolerance)
            throw Error(Errc::invalid_distribution, "probabilities sum to " + std::to_string(sum));
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t a) const noexcept { return probs_[a]; }
    const std::vector<double>& probs() const noexcept { return probs_; }

private:
    std::vector<double> probs_;
};

/// Row-stochastic matrix over tree ids.
class TransitionMatrix {
public:
    explicit TransitionMatrix(std::vector<std::vector<double>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (rows[i].size() != n_) throw Error(Errc::dimension_mismatch, "transition matrix is not square");
            double sum = 0.0;
            for (double v : rows[i]) {
                if (!(v >= 0.0)) throw Error(Errc::invalid_distribution, "negative transition probability");
                sum += v;
                data_.push_back(v);
            }
            if (std::abs(sum - 1.0) > probability_tolerance)
                throw Error(Errc::invalid_distribution, "row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

inline TransitionMatrix transition_matrix(const CodeTreeSet& set, const SourceDistribution& dist) {
    if (dist.size() != set.alphabet_size())
        throw Error(Errc::dimension_mismatch, "distribution has " + std::to_string(dist.size()) + " symbols, code has " +
                                                  std::to_string(set.alphabet_size()));
    std::vector<std::vector<double>> rows(set.size(), std::vector<double>(set.size(), 0.0));
    for (TreeId k = 0; k < set.size(); ++k)
        for (std::size_t a = 0; a < set.alphabet_size(); ++a) rows[k][set.point(k, Symbol{a})] += dist[a];
    return TransitionMatrix(std::move(rows));
}

/// Long-run fraction of time spent in each tree when starting from tree 0,
/// i.e. the limit of the Cesàro averages of e_0 P^t. Computed exactly: each
/// closed class reached from tree 0 contributes its own stationary vector,
/// weighted by the probability of being absorbed into it.
inline std::vector<double> stationary(const TransitionMatrix& p) {
    const std::size_t n = p.size();
    if (n == 0) throw Error(Errc::dimension_mismatch, "empty transition matrix");

    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> stack{i};
        reach[i][i] = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (p(u, v) > 0.0 && !reach[i][v]) {
                    reach[i][v] = true;
                    stack.push_back(v);
                }
        }
    }
    // A state is recurrent iff everything it reaches reaches it back.
    std::vector<bool> recurrent(n, true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && !reach[j][i]) recurrent[i] = false;

    std::vector<std::size_t> transient;
    for (std::size_t i = 0; i < n; ++i)
        if (reach[0][i] && !recurrent[i]) transient.push_back(i);

    std::vector<double> occupancy(n, 0.0);
    std::vector<bool> done(n, false);
    for (std::size_t r = 0; r < n; ++r) {
        if (!reach[0][r] || !recurrent[r] || done[r]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[r][j]) cls.push_back(j), done[j] = true;

        // Stationary vector of the class: pi (P_C - I) = 0, sum(pi) = 1.
        const auto m = static_cast<Eigen::Index>(cls.size());
        Eigen::MatrixXd a(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) a(i, j) = p(cls[j], cls[i]) - (i == j ? 1.0 : 0.0);
        a.row(m - 1).setOnes();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        rhs(m - 1) = 1.0;
        Eigen::VectorXd pi = a.fullPivLu().solve(rhs);

        // Probability of ending up in this class from tree 0.
        double weight = 1.0;
        if (!recurrent[0]) {
            const auto t = static_cast<Eigen::Index>(transient.size());
            Eigen::MatrixXd q = Eigen::MatrixXd::Identity(t, t);
            Eigen::VectorXd into = Eigen::VectorXd::Zero(t);
            Eigen::Index start = 0;
            for (Eigen::Index i = 0; i < t; ++i) {
                if (transient[i] == 0) start = i;
                for (Eigen::Index j = 0; j < t; ++j) q(i, j) -= p(transient[i], transient[j]);
                for (std::size_t c : cls) into(i) += p(transient[i], c);
            }
            weight = q.fullPivLu().solve(into)(start);
        }
        for (Eigen::Index i = 0; i < m; ++i) occupancy[cls[i]] += weight * pi(i);
    }

    double sum = 0.0, residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double flow = 0.0;
        for (std::size_t i = 0; i < n; ++i) flow += occupancy[i] * p(i, j);
        residual = std::max(residual, std::abs(flow - occupancy[j]));
        sum += occupancy[j];
        if (!(occupancy[j] >= -1e-12)) residual = INFINITY;
    }
    if (!(residual <= 1e-9) || std::abs(sum - 1.0) > 1e-9)
        throw Error(Errc::no_convergence, "occupancy solve left residual " + std::to_string(residual));
    for (double& v : occupancy) v = std::max(v, 0.0);
    return occupancy;
}

/// Σ_k Π_k Σ_a p(a) |Cword_k(a)|
inline double expected_code_length(const CodeTreeSet& set, const SourceDistribution& dist) {
    require_valid(set);
    auto pi = stationary(transition_matrix(set, dist));
    double total = 0.0;
    for (TreeId k = 0; k < set.size(); ++k) {
        double per_tree = 0.0;
        for (std::size_t a = 0; a < set.alphabet_size(); ++a)
            per_tree += dist[a] * static_cast<double>(set.cword(k, Symbol{a}).size());
        total += pi[k] * per_tree;
    }
    return total;
}

inline double entropy(const SourceDistribution& dist) {
    double h = 0.0;
    for (double p : dist.probs())
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

struct MonteCarloResult {
    double rate = 0.0;            // body bits per symbol
    double standard_error = 0.0;  // from batch means
    std::size_t symbols = 0;
};

/// Encodes one i.i.d. sequence of `n` symbols drawn from `dist`.
inline MonteCarloResult monte_carlo(const CodeTreeSet& set, const SourceDistribution& dist, std::size_t n,
                                    std::uint64_t seed, std::size_t batches = 100) {
    if (dist.size() != set.alphabet_size()) throw Error(Errc::dimension_mismatch, "distribution does not match alphabet");
    Codec codec(set);
    MonteCarloResult out;
    out.symbols = n;
    if (n == 0) return out;

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> draw(dist.probs().begin(), dist.probs().end());
    SymbolSeq xs(n);
    for (auto& x : xs) x = Symbol{draw(rng)};
    out.rate = static_cast<double>(codec.encode_without_termination(xs).size()) / static_cast<double>(n);

    batches = std::min(batches, n);
    if (batches >= 2) {
        std::vector<double> means;
        TreeId k = 0;
        std::size_t pos = 0;
        for (std::size_t b = 0; b < batches; ++b) {
            std::size_t end = n * (b + 1) / batches, bits = 0, count = end - pos;
            for (; pos < end; ++pos) {
                bits += set.cword(k, xs[pos]).size();
                k = set.point(k, xs[pos]);
            }
            means.push_back(static_cast<double>(bits) / static_cast<double>(count));
        }
        double mean = 0.0, var = 0.0;
        for (double m : means) mean += m;
        mean /= static_cast<double>(batches);
        for (double m : means) var += (m - mean) * (m - mean);
        var /= static_cast<double>(batches - 1);
        out.standard_error = std::sqrt(var / static_cast<double>(batches));
    }
    return out;
}

inline double monte_carlo_rate(const CodeTreeSet& set, const SourceDistribution& dist, std::size_t n, std::uint64_t seed) {
    return monte_carlo(set, dist, n, seed).rate;
}

}  // namespace aifv
