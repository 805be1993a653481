// Copyright 2026 The qdh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdh/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qdh/states.h"

using namespace qdh;

namespace {

constexpr double kNormalizationTol = 1e-9;

void check_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("hidden bit must be 0 or 1");
    }
}

void check_exact_n(int n) {
    if (n < 1 || n > kMaxExactPairs) {
        throw std::invalid_argument("n ≤ 3 for exact analysis");
    }
}

// Coordinates of a pair state on paths (2,4) in the ten-label basis.
Eigen::VectorXcd label_coords(const FockState &state) {
    Eigen::VectorXcd out(10);
    for (auto label : kAllBellLabels) {
        out(static_cast<Eigen::Index>(index_of(label))) =
            inner(bell(label, kSharerPaths.first, kSharerPaths.second), state);
    }
    return out;
}

std::vector<std::string> label_product_basis(int n) {
    std::vector<std::string> out{""};
    for (int k = 0; k < n; k++) {
        std::vector<std::string> next;
        for (const auto &prefix : out) {
            for (auto label : kAllBellLabels) {
                next.push_back(prefix.empty() ? name_of(label) : prefix + "⊗" + name_of(label));
            }
        }
        out = std::move(next);
    }
    return out;
}

double total_weight(const Ensemble &e) {
    double t = 0;
    for (const auto &b : e) {
        t += b.weight;
    }
    if (t <= 0) {
        throw std::invalid_argument("ensemble has no weight");
    }
    return t;
}

void check_prior(const Prior &prior) {
    if (prior[0] < 0 || prior[1] < 0 || std::abs(prior[0] + prior[1] - 1) > kNormalizationTol) {
        throw std::invalid_argument("prior must be a probability distribution");
    }
}

std::string transcript_str(const std::vector<OccupationVector> &slots) {
    std::string out;
    for (const auto &s : slots) {
        if (!out.empty()) {
            out += " | ";
        }
        out += s.str();
    }
    return out;
}

// Distribution over full photon-count transcripts for one ensemble.
std::map<std::vector<OccupationVector>, double> count_distribution(const Ensemble &e) {
    double norm = total_weight(e);
    std::map<std::vector<OccupationVector>, double> out;
    for (const auto &branch : e) {
        std::vector<std::pair<std::vector<OccupationVector>, double>> partial{{{}, branch.weight / norm}};
        for (const auto &slot : branch.slots) {
            double slot_norm = slot.norm_squared();
            std::vector<std::pair<std::vector<OccupationVector>, double>> next;
            for (const auto &[prefix, p] : partial) {
                for (const auto &[ket, amp] : slot.amplitudes()) {
                    auto t = prefix;
                    t.push_back(ket);
                    next.emplace_back(std::move(t), p * std::norm(amp) / slot_norm);
                }
            }
            partial = std::move(next);
        }
        for (auto &[t, p] : partial) {
            out[t] += p;
        }
    }
    return out;
}

double mutual_information_of(const std::vector<std::array<double, 2>> &joint) {
    std::vector<std::vector<double>> table;
    table.reserve(joint.size());
    for (const auto &row : joint) {
        table.push_back({row[0], row[1]});
    }
    return mutual_information(table);
}

}  // namespace

void AnalysisParams::validate() const {
    if (n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    if (m < 0 || m > n) {
        throw std::invalid_argument("m must lie in [0, n]");
    }
    check_prior(prior);
}

Ensemble qdh::pure_ensemble(const FockState &state) {
    return {Branch{1.0, {state}}};
}

Ensemble qdh::hiding_ensemble(int bit, int n, const GeneralizedBellAnalyzer &analyzer) {
    check_bit(bit);
    check_exact_n(n);
    auto outcomes = analyzer.branches(theta(), kHiderPaths);
    Ensemble out;
    std::vector<size_t> idx(static_cast<size_t>(n), 0);
    while (true) {
        Branch b{1.0, {}};
        size_t class1 = 0;
        for (size_t k : idx) {
            const auto &o = outcomes[k];
            if (!o.klass) {
                throw std::logic_error("four-photon event failed to herald");
            }
            b.weight *= o.probability;
            b.slots.push_back(o.posterior);
            class1 += *o.klass == GbaClass::Class1;
        }
        if (static_cast<int>(class1 % 2) == bit) {
            out.push_back(std::move(b));
        }
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == outcomes.size()) {
            idx[pos++] = 0;
        }
        if (pos == idx.size()) {
            break;
        }
    }
    double z = total_weight(out);
    for (auto &b : out) {
        b.weight /= z;
    }
    return out;
}

DensityMatrix qdh::hiding_density_matrix(int bit, int n, const GeneralizedBellAnalyzer &analyzer) {
    check_bit(bit);
    check_exact_n(n);
    // Per-class unnormalized blocks; the conditioned law factorizes over class tuples.
    std::array<Eigen::MatrixXcd, 3> block;
    block.fill(Eigen::MatrixXcd::Zero(10, 10));
    for (const auto &o : analyzer.branches(theta(), kHiderPaths)) {
        if (!o.klass) {
            throw std::logic_error("four-photon event failed to herald");
        }
        auto c = label_coords(o.posterior);
        block[index_of(*o.klass)] += o.probability * c * c.adjoint();
    }

    Eigen::Index dim = 1;
    for (int k = 0; k < n; k++) {
        dim *= 10;
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<size_t> cls(static_cast<size_t>(n), 0);
    while (true) {
        size_t class1 = std::count(cls.begin(), cls.end(), index_of(GbaClass::Class1));
        if (static_cast<int>(class1 % 2) == bit) {
            Eigen::MatrixXcd term = block[cls[0]];
            for (size_t k = 1; k < cls.size(); k++) {
                const auto &b = block[cls[k]];
                Eigen::MatrixXcd next(term.rows() * 10, term.cols() * 10);
                for (Eigen::Index r = 0; r < term.rows(); r++) {
                    for (Eigen::Index c = 0; c < term.cols(); c++) {
                        next.block(r * 10, c * 10, 10, 10) = term(r, c) * b;
                    }
                }
                term = std::move(next);
            }
            rho += term;
        }
        size_t pos = 0;
        while (pos < cls.size() && ++cls[pos] == 3) {
            cls[pos++] = 0;
        }
        if (pos == cls.size()) {
            break;
        }
    }
    // Slot 0 is the most significant index of the kron product above.
    DensityMatrix out{label_product_basis(n), rho / rho.trace().real()};
    return out;
}

DensityMatrix qdh::density_in_label_basis(const Ensemble &ensemble) {
    if (ensemble.empty()) {
        throw std::invalid_argument("empty ensemble");
    }
    size_t n = ensemble.front().slots.size();
    Eigen::Index dim = 1;
    for (size_t k = 0; k < n; k++) {
        dim *= 10;
    }
    Eigen::MatrixXcd columns(dim, static_cast<Eigen::Index>(ensemble.size()));
    Eigen::Index col = 0;
    for (const auto &b : ensemble) {
        if (b.slots.size() != n) {
            throw std::invalid_argument("ensemble branches have different slot counts");
        }
        Eigen::VectorXcd vec = Eigen::VectorXcd::Ones(1);
        for (const auto &slot : b.slots) {
            auto c = label_coords(slot.normalized());
            Eigen::VectorXcd next(vec.size() * 10);
            for (Eigen::Index r = 0; r < vec.size(); r++) {
                next.segment(r * 10, 10) = vec(r) * c;
            }
            vec = std::move(next);
        }
        columns.col(col++) = std::sqrt(b.weight) * vec;
    }
    Eigen::MatrixXcd rho = columns * columns.adjoint();
    return DensityMatrix{label_product_basis(static_cast<int>(n)), rho / rho.trace().real()};
}

std::pair<DensityMatrix, DensityMatrix> qdh::density_pair(const Ensemble &e0, const Ensemble &e1) {
    std::map<std::vector<OccupationVector>, Eigen::Index> index;
    auto collect = [&](const Ensemble &e) {
        for (const auto &b : e) {
            std::vector<std::vector<OccupationVector>> partial{{}};
            for (const auto &slot : b.slots) {
                std::vector<std::vector<OccupationVector>> next;
                for (const auto &prefix : partial) {
                    for (const auto &[ket, amp] : slot.amplitudes()) {
                        auto t = prefix;
                        t.push_back(ket);
                        next.push_back(std::move(t));
                    }
                }
                partial = std::move(next);
            }
            for (auto &t : partial) {
                index.emplace(std::move(t), 0);
            }
        }
    };
    collect(e0);
    collect(e1);
    std::vector<std::string> basis;
    for (auto &[key, i] : index) {
        i = static_cast<Eigen::Index>(basis.size());
        basis.push_back(transcript_str(key));
    }
    auto dim = static_cast<Eigen::Index>(basis.size());
    auto build = [&](const Ensemble &e) {
        Eigen::MatrixXcd columns = Eigen::MatrixXcd::Zero(dim, static_cast<Eigen::Index>(e.size()));
        Eigen::Index col = 0;
        double z = total_weight(e);
        for (const auto &b : e) {
            std::vector<std::pair<std::vector<OccupationVector>, std::complex<double>>> partial{{{}, 1.0}};
            for (const auto &slot : b.slots) {
                double sn = slot.norm();
                std::vector<std::pair<std::vector<OccupationVector>, std::complex<double>>> next;
                for (const auto &[prefix, a] : partial) {
                    for (const auto &[ket, amp] : slot.amplitudes()) {
                        auto t = prefix;
                        t.push_back(ket);
                        next.emplace_back(std::move(t), a * amp / sn);
                    }
                }
                partial = std::move(next);
            }
            double scale = std::sqrt(b.weight / z);
            for (const auto &[t, a] : partial) {
                columns(index.at(t), col) += scale * a;
            }
            col++;
        }
        return DensityMatrix{basis, columns * columns.adjoint()};
    };
    return {build(e0), build(e1)};
}

double qdh::trace_distance(const DensityMatrix &r0, const DensityMatrix &r1) {
    if (r0.basis != r1.basis) {
        throw std::invalid_argument("basis mismatch");
    }
    Eigen::MatrixXcd diff = r0.matrix - r1.matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double qdh::helstrom_error(const DensityMatrix &r0, const DensityMatrix &r1, const Prior &prior) {
    check_prior(prior);
    if (r0.basis != r1.basis) {
        throw std::invalid_argument("basis mismatch");
    }
    Eigen::MatrixXcd diff = prior[0] * r0.matrix - prior[1] * r1.matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * (1 - solver.eigenvalues().cwiseAbs().sum());
}

double qdh::information_bound(const DensityMatrix &r0, const DensityMatrix &r1, const Prior &prior) {
    double h = entropy(prior);
    return std::clamp(h - 2 * helstrom_error(r0, r1, prior), 0.0, h);
}

double qdh::entropy(std::span<const double> dist) {
    double total = 0;
    for (double p : dist) {
        if (p < 0) {
            throw std::invalid_argument("negative probability");
        }
        total += p;
    }
    if (std::abs(total - 1) > kNormalizationTol) {
        throw std::invalid_argument("distribution is not normalized");
    }
    double h = 0;
    for (double p : dist) {
        if (p > 0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

double qdh::mutual_information(const std::vector<std::vector<double>> &joint) {
    std::vector<double> flat;
    std::vector<double> px(joint.size(), 0);
    std::vector<double> py;
    for (size_t x = 0; x < joint.size(); x++) {
        if (py.empty()) {
            py.assign(joint[x].size(), 0);
        } else if (joint[x].size() != py.size()) {
            throw std::invalid_argument("ragged joint table");
        }
        for (size_t y = 0; y < joint[x].size(); y++) {
            px[x] += joint[x][y];
            py[y] += joint[x][y];
            flat.push_back(joint[x][y]);
        }
    }
    // I = H(X) + H(Y) - H(X,Y); entropy() validates signs and normalization.
    double i = entropy(px) + entropy(py) - entropy(flat);
    return std::max(0.0, i);
}

double qdh::security_bound(int m, std::span<const double> prior) {
    if (m < 1) {
        throw std::invalid_argument("bound undefined; no S1 pairs");
    }
    return std::ldexp(entropy(prior), 1 - m);
}

StrategyResult qdh::local_count_strategy(const Ensemble &e0, const Ensemble &e1, const Prior &prior) {
    check_prior(prior);
    auto d0 = count_distribution(e0);
    auto d1 = count_distribution(e1);
    std::map<std::vector<OccupationVector>, std::array<double, 2>> joint;
    for (const auto &[t, p] : d0) {
        joint[t][0] += prior[0] * p;
    }
    for (const auto &[t, p] : d1) {
        joint[t][1] += prior[1] * p;
    }
    StrategyResult out;
    out.strategy = "local_count";
    for (const auto &[t, row] : joint) {
        out.transcripts.push_back(transcript_str(t));
        out.joint.push_back(row);
    }
    out.mutual_information = mutual_information_of(out.joint);
    auto [r0, r1] = density_pair(e0, e1);
    out.bound = information_bound(r0, r1, prior);
    return out;
}

StrategyResult qdh::local_count_strategy(int n) {
    return local_count_strategy(hiding_ensemble(0, n), hiding_ensemble(1, n), kUniformPrior);
}

StrategyResult qdh::joint_gba_strategy(const Ensemble &e0, const Ensemble &e1, const Prior &prior,
                                       const GeneralizedBellAnalyzer &analyzer) {
    check_prior(prior);
    auto parity_law = [&](const Ensemble &e) {
        double z = total_weight(e);
        std::array<double, 2> law{};
        for (const auto &b : e) {
            std::array<double, 2> parity{1, 0};
            for (const auto &slot : b.slots) {
                double p1 = 0;
                for (const auto &o : analyzer.branches(slot, kSharerPaths)) {
                    p1 += o.klass == GbaClass::Class1 ? o.probability : 0;
                }
                parity = {parity[0] * (1 - p1) + parity[1] * p1, parity[1] * (1 - p1) + parity[0] * p1};
            }
            law[0] += b.weight / z * parity[0];
            law[1] += b.weight / z * parity[1];
        }
        return law;
    };
    auto l0 = parity_law(e0);
    auto l1 = parity_law(e1);
    StrategyResult out;
    out.strategy = "joint_gba";
    out.transcripts = {"even", "odd"};
    out.joint = {{prior[0] * l0[0], prior[1] * l1[0]}, {prior[0] * l0[1], prior[1] * l1[1]}};
    out.mutual_information = mutual_information_of(out.joint);
    auto [r0, r1] = density_pair(e0, e1);
    out.bound = information_bound(r0, r1, prior);
    return out;
}

StrategyResult qdh::joint_gba_strategy(int n) {
    return joint_gba_strategy(hiding_ensemble(0, n), hiding_ensemble(1, n), kUniformPrior);
}

OmegaGuess qdh::locc_distinguish_omega(const FockState &state, std::mt19937_64 &rng) {
    const double r = 1 / std::sqrt(2.0);
    const auto alice_modes = path_modes(kAlicePath);
    const auto bob_modes = path_modes(kBobPath);
    const OccupationVector alice_pair{{h(kAlicePath), 1}, {v(kAlicePath), 1}};
    const OccupationVector bob_pair{{h(kBobPath), 1}, {v(kBobPath), 1}};
    const OccupationVector vac;
    std::uniform_real_distribution<double> unit(0, 1);

    // Round 1: Alice measures {(|hv> + s|0>)/sqrt2}, s = +1 then -1.
    std::array<FockState, 2> alice_residual;
    std::array<double, 2> alice_prob{};
    for (int k = 0; k < 2; k++) {
        double s = k == 0 ? 1 : -1;
        FockState basis_vec{{alice_pair, r}, {vac, s * r}};
        alice_residual[k] = project_local(state, basis_vec, alice_modes);
        alice_prob[k] = alice_residual[k].norm_squared();
    }
    double total = alice_prob[0] + alice_prob[1];
    if (total <= 0) {
        throw std::invalid_argument("input has no support on the Omega subspace");
    }
    int a = unit(rng) * total < alice_prob[0] ? 0 : 1;
    FockState bob_state = alice_residual[a].normalized();

    // Round 2: Bob measures {(|0> + s|hv>)/sqrt2} after hearing Alice's sign.
    std::array<double, 2> bob_prob{};
    for (int k = 0; k < 2; k++) {
        double s = k == 0 ? 1 : -1;
        FockState basis_vec{{vac, r}, {bob_pair, s * r}};
        bob_prob[k] = project_local(bob_state, basis_vec, bob_modes).norm_squared();
    }
    int b = unit(rng) * (bob_prob[0] + bob_prob[1]) < bob_prob[0] ? 0 : 1;

    int alice_sign = a == 0 ? 1 : -1;
    int bob_sign = b == 0 ? 1 : -1;
    return OmegaGuess{alice_sign * bob_sign, alice_sign, bob_sign, 1};
}

double qdh::overhead_factor(const SessionAggregate &stats) {
    if (stats.pairs_drawn < 10000) {
        throw std::invalid_argument("overhead estimate needs at least 1e4 pairs");
    }
    double s1 = stats.s1_fraction();
    if (s1 <= 0) {
        throw std::domain_error("no S1 pairs observed");
    }
    return 1 / s1;
}
