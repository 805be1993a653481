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

#include "qdh/fock.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

using namespace qdh;

Mode::Mode(int path, Polarization pol) : path(path), pol(pol) {
    if (path < 1) {
        throw std::invalid_argument("mode path must be >= 1, got " + std::to_string(path));
    }
}

std::string Mode::str() const {
    return (pol == Polarization::H ? "h" : "v") + std::to_string(path);
}

std::set<Mode> qdh::path_modes(int path) {
    return {h(path), v(path)};
}

std::set<Mode> qdh::path_modes(std::initializer_list<int> paths) {
    std::set<Mode> out;
    for (int p : paths) {
        out.insert(h(p));
        out.insert(v(p));
    }
    return out;
}

OccupationVector::OccupationVector(std::initializer_list<std::pair<Mode, int>> counts) {
    OccupationVector acc;
    for (const auto &[mode, n] : counts) {
        acc = acc.with_count(mode, acc.count(mode) + n);
    }
    *this = std::move(acc);
}

int OccupationVector::count(const Mode &mode) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode, [](const auto &e, const Mode &m) {
        return e.first < m;
    });
    if (it != entries_.end() && it->first == mode) {
        return it->second;
    }
    return 0;
}

int OccupationVector::total() const {
    int t = 0;
    for (const auto &e : entries_) {
        t += e.second;
    }
    return t;
}

OccupationVector OccupationVector::with_count(const Mode &mode, int count) const {
    if (count < 0) {
        throw std::invalid_argument("negative occupation");
    }
    if (count > kMaxOccupation) {
        throw std::domain_error("occupation cap exceeded at mode " + mode.str());
    }
    OccupationVector out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), mode, [](const auto &e, const Mode &m) {
        return e.first < m;
    });
    bool present = it != out.entries_.end() && it->first == mode;
    if (count == 0) {
        if (present) {
            out.entries_.erase(it);
        }
    } else if (present) {
        it->second = count;
    } else {
        out.entries_.insert(it, {mode, count});
    }
    return out;
}

std::pair<OccupationVector, OccupationVector> OccupationVector::split(const std::set<Mode> &modes) const {
    std::pair<OccupationVector, OccupationVector> out;
    for (const auto &e : entries_) {
        if (modes.contains(e.first)) {
            out.first.entries_.push_back(e);
        } else {
            out.second.entries_.push_back(e);
        }
    }
    return out;
}

OccupationVector OccupationVector::merged(const OccupationVector &other) const {
    OccupationVector out;
    std::merge(
        entries_.begin(), entries_.end(), other.entries_.begin(), other.entries_.end(),
        std::back_inserter(out.entries_), [](const auto &a, const auto &b) {
            return a.first < b.first;
        });
    for (size_t k = 1; k < out.entries_.size(); k++) {
        if (out.entries_[k - 1].first == out.entries_[k].first) {
            throw std::invalid_argument("merged kets share mode " + out.entries_[k].first.str());
        }
    }
    return out;
}

double OccupationVector::factorial_product() const {
    double f = 1;
    for (const auto &e : entries_) {
        f *= std::tgamma(e.second + 1.0);
    }
    return f;
}

std::string OccupationVector::str() const {
    if (entries_.empty()) {
        return "vac";
    }
    std::string out;
    for (const auto &[mode, n] : entries_) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(mode.path);
        out += mode.pol == Polarization::H ? ".H:" : ".V:";
        out += std::to_string(n);
    }
    return out;
}

OccupationVector OccupationVector::parse(std::string_view text) {
    OccupationVector out;
    if (text == "vac") {
        return out;
    }
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int path = 0;
        char pol = 0;
        int n = 0;
        if (std::sscanf(item.c_str(), "%d.%c:%d", &path, &pol, &n) != 3 || (pol != 'H' && pol != 'V')) {
            throw std::invalid_argument("bad ket token '" + item + "'");
        }
        Mode m(path, pol == 'H' ? Polarization::H : Polarization::V);
        out = out.with_count(m, out.count(m) + n);
    }
    return out;
}

namespace {

FockState::Map pruned(FockState::Map map, double tol) {
    std::erase_if(map, [tol](const auto &kv) {
        return std::abs(kv.second) < tol;
    });
    return map;
}

}  // namespace

FockState::FockState(Map amplitudes, double prune_tolerance)
    : amplitudes_(pruned(std::move(amplitudes), prune_tolerance)), prune_tolerance_(prune_tolerance) {
}

FockState::FockState(std::initializer_list<std::pair<const OccupationVector, Amplitude>> terms)
    : FockState(Map(terms)) {
}

FockState::Amplitude FockState::amplitude(const OccupationVector &ket) const {
    auto it = amplitudes_.find(ket);
    return it == amplitudes_.end() ? Amplitude{} : it->second;
}

double FockState::norm_squared() const {
    double t = 0;
    for (const auto &kv : amplitudes_) {
        t += std::norm(kv.second);
    }
    return t;
}

double FockState::norm() const {
    return std::sqrt(norm_squared());
}

FockState FockState::normalized() const {
    double n = norm();
    if (n == 0) {
        throw std::domain_error("cannot normalize the zero state");
    }
    return *this * (1.0 / n);
}

std::set<Mode> FockState::occupied_modes() const {
    std::set<Mode> out;
    for (const auto &kv : amplitudes_) {
        for (const auto &e : kv.first.entries()) {
            out.insert(e.first);
        }
    }
    return out;
}

bool FockState::has_photon_number(int n) const {
    return std::all_of(amplitudes_.begin(), amplitudes_.end(), [n](const auto &kv) {
        return kv.first.total() == n;
    });
}

FockState FockState::operator+(const FockState &other) const {
    Map out = amplitudes_;
    for (const auto &[ket, amp] : other.amplitudes_) {
        out[ket] += amp;
    }
    return FockState(std::move(out), prune_tolerance_);
}

FockState FockState::operator-(const FockState &other) const {
    return *this + other * -1.0;
}

FockState FockState::operator*(Amplitude scale) const {
    Map out = amplitudes_;
    for (auto &kv : out) {
        kv.second *= scale;
    }
    return FockState(std::move(out), prune_tolerance_);
}

bool FockState::approx_equal(const FockState &other, double tol) const {
    for (const auto &[ket, amp] : amplitudes_) {
        if (std::abs(amp - other.amplitude(ket)) > tol) {
            return false;
        }
    }
    for (const auto &[ket, amp] : other.amplitudes_) {
        if (std::abs(amp - amplitude(ket)) > tol) {
            return false;
        }
    }
    return true;
}

FockState qdh::vacuum() {
    return FockState{{OccupationVector{}, 1.0}};
}

FockState qdh::create(const FockState &state, const Mode &mode) {
    FockState::Map out;
    for (const auto &[ket, amp] : state.amplitudes()) {
        int n = ket.count(mode);
        out[ket.with_count(mode, n + 1)] += amp * std::sqrt(n + 1.0);
    }
    return FockState(std::move(out), state.prune_tolerance());
}

FockState qdh::annihilate(const FockState &state, const Mode &mode) {
    FockState::Map out;
    for (const auto &[ket, amp] : state.amplitudes()) {
        int n = ket.count(mode);
        if (n > 0) {
            out[ket.with_count(mode, n - 1)] += amp * std::sqrt(static_cast<double>(n));
        }
    }
    return FockState(std::move(out), state.prune_tolerance());
}

std::complex<double> qdh::inner(const FockState &a, const FockState &b) {
    const auto &small = a.size() <= b.size() ? a : b;
    const auto &large = a.size() <= b.size() ? b : a;
    std::complex<double> t = 0;
    for (const auto &[ket, amp] : small.amplitudes()) {
        auto other = large.amplitude(ket);
        t += &small == &a ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return t;
}

FockState qdh::tensor(const FockState &a, const FockState &b) {
    FockState::Map out;
    for (const auto &[ka, va] : a.amplitudes()) {
        for (const auto &[kb, vb] : b.amplitudes()) {
            out[ka.merged(kb)] += va * vb;
        }
    }
    return FockState(std::move(out), std::min(a.prune_tolerance(), b.prune_tolerance()));
}

std::map<OccupationVector, FockState> qdh::split_by_occupation(const FockState &state, const std::set<Mode> &modes) {
    std::map<OccupationVector, FockState::Map> groups;
    for (const auto &[ket, amp] : state.amplitudes()) {
        auto [on, rest] = ket.split(modes);
        groups[on][rest] += amp;
    }
    std::map<OccupationVector, FockState> out;
    for (auto &[key, map] : groups) {
        out.emplace(key, FockState(std::move(map), state.prune_tolerance()));
    }
    return out;
}

FockState qdh::project_local(const FockState &state, const FockState &local, const std::set<Mode> &local_modes) {
    for (const auto &m : local.occupied_modes()) {
        if (!local_modes.contains(m)) {
            throw std::invalid_argument("local vector occupies mode " + m.str() + " outside its mode set");
        }
    }
    FockState::Map out;
    for (const auto &[ket, amp] : state.amplitudes()) {
        auto [on, rest] = ket.split(local_modes);
        auto l = local.amplitude(on);
        if (l != 0.0) {
            out[rest] += std::conj(l) * amp;
        }
    }
    return FockState(std::move(out), state.prune_tolerance());
}

ModeMap::ModeMap(std::vector<Mode> modes, Eigen::MatrixXcd matrix) : modes_(std::move(modes)), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(modes_.size());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument("mode map matrix must be square over its mode list");
    }
    std::set<Mode> unique(modes_.begin(), modes_.end());
    if (unique.size() != modes_.size()) {
        throw std::invalid_argument("mode map lists a mode twice");
    }
}

ModeMap ModeMap::identity(std::vector<Mode> modes) {
    auto n = static_cast<Eigen::Index>(modes.size());
    return ModeMap(std::move(modes), Eigen::MatrixXcd::Identity(n, n));
}

bool ModeMap::is_unitary(double tol) const {
    Eigen::MatrixXcd product = matrix_ * matrix_.adjoint();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
    return (product - id).cwiseAbs().maxCoeff() <= tol;
}

ModeMap ModeMap::after(const ModeMap &first) const {
    if (first.modes_ != modes_) {
        throw std::invalid_argument("composed mode maps must share a mode list");
    }
    return ModeMap(modes_, matrix_ * first.matrix_);
}

ModeMap ModeMap::embedded(const std::set<Mode> &extra) const {
    std::vector<Mode> modes = modes_;
    for (const auto &m : extra) {
        if (std::find(modes_.begin(), modes_.end(), m) == modes_.end()) {
            modes.push_back(m);
        }
    }
    auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Identity(n, n);
    matrix.topLeftCorner(matrix_.rows(), matrix_.cols()) = matrix_;
    return ModeMap(std::move(modes), std::move(matrix));
}

FockState qdh::apply_mode_map(const FockState &state, const ModeMap &map) {
    const auto &modes = map.modes();
    std::map<Mode, size_t> index;
    for (size_t k = 0; k < modes.size(); k++) {
        index.emplace(modes[k], k);
    }

    FockState::Map out;
    for (const auto &[ket, amp] : state.amplitudes()) {
        // Expand prod_m (sum_k M[k,m] a_k^dag)^{n_m} as monomial coefficients,
        // starting from the ket's coefficient amp / sqrt(prod n_m!).
        FockState::Map poly{{OccupationVector{}, amp / std::sqrt(ket.factorial_product())}};
        for (const auto &[mode, n] : ket.entries()) {
            auto it = index.find(mode);
            if (it == index.end()) {
                throw std::invalid_argument("uncovered mode " + mode.str());
            }
            auto col = map.matrix().col(static_cast<Eigen::Index>(it->second));
            for (int rep = 0; rep < n; rep++) {
                FockState::Map next;
                for (const auto &[mono, c] : poly) {
                    for (size_t k = 0; k < modes.size(); k++) {
                        auto coeff = col(static_cast<Eigen::Index>(k));
                        if (coeff == 0.0) {
                            continue;
                        }
                        next[mono.with_count(modes[k], mono.count(modes[k]) + 1)] += c * coeff;
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto &[mono, c] : poly) {
            out[mono] += c * std::sqrt(mono.factorial_product());
        }
    }
    return FockState(std::move(out), state.prune_tolerance());
}

double DensityMatrix::trace() const {
    return matrix.trace().real();
}

double DensityMatrix::purity() const {
    return (matrix * matrix).trace().real();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

void DensityMatrix::validate(double hermitian_tol, double eigen_tol, double trace_tol) const {
    if (static_cast<size_t>(matrix.rows()) != basis.size() || matrix.rows() != matrix.cols()) {
        throw std::domain_error("density matrix shape does not match its basis");
    }
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > hermitian_tol) {
        throw std::domain_error("density matrix is not hermitian");
    }
    if (std::abs(trace() - 1) > trace_tol) {
        throw std::domain_error("density matrix trace is " + std::to_string(trace()));
    }
    if (eigenvalues().minCoeff() < -eigen_tol) {
        throw std::domain_error("density matrix has a negative eigenvalue");
    }
}

DensityMatrix qdh::reduced_density(const FockState &state, const std::set<Mode> &keep_modes) {
    // rho[k1,k2] = sum_t a(k1,t) conj(a(k2,t)), grouped by traced-out sub-ket t.
    std::map<OccupationVector, std::vector<std::pair<OccupationVector, std::complex<double>>>> by_traced;
    std::set<OccupationVector> kept;
    for (const auto &[ket, amp] : state.amplitudes()) {
        auto [keep, rest] = ket.split(keep_modes);
        by_traced[rest].emplace_back(keep, amp);
        kept.insert(keep);
    }
    std::map<OccupationVector, Eigen::Index> index;
    DensityMatrix out;
    for (const auto &k : kept) {
        index.emplace(k, static_cast<Eigen::Index>(out.basis.size()));
        out.basis.push_back(k.str());
    }
    auto dim = static_cast<Eigen::Index>(out.basis.size());
    out.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &[rest, column] : by_traced) {
        for (const auto &[k1, a1] : column) {
            for (const auto &[k2, a2] : column) {
                out.matrix(index[k1], index[k2]) += a1 * std::conj(a2);
            }
        }
    }
    double tr = out.trace();
    if (tr > 0) {
        out.matrix /= tr;
    }
    return out;
}

std::string qdh::serialize(const FockState &state) {
    std::string out;
    char buf[96];
    for (const auto &[ket, amp] : state.amplitudes()) {
        std::snprintf(buf, sizeof(buf), "  %.17g  %.17g\n", amp.real(), amp.imag());
        out += ket.str();
        out += buf;
    }
    return out;
}

FockState qdh::parse_state(std::string_view text) {
    FockState::Map out;
    std::stringstream ss{std::string(text)};
    std::string line;
    while (std::getline(ss, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::stringstream ls(line);
        std::string ket;
        double re = 0;
        double im = 0;
        if (!(ls >> ket >> re >> im)) {
            throw std::invalid_argument("bad state line '" + line + "'");
        }
        out[OccupationVector::parse(ket)] += std::complex<double>(re, im);
    }
    return FockState(std::move(out));
}
