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

#ifndef QDH_FOCK_H
#define QDH_FOCK_H

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qdh {

enum class Polarization : uint8_t { H = 0, V = 1 };

/// A single bosonic mode: a spatial path and a polarization.
///
/// Modes are totally ordered by (path ascending, H before V). Every canonical
/// form in the library (kets, monomials, serialization) uses this order.
struct Mode {
    int path;
    Polarization pol;

    Mode(int path, Polarization pol);

    std::string str() const;  // "h1", "v4"
    auto operator<=>(const Mode &) const = default;
    bool operator==(const Mode &) const = default;
};

inline Mode h(int path) {
    return Mode(path, Polarization::H);
}
inline Mode v(int path) {
    return Mode(path, Polarization::V);
}

/// The two polarization modes of a path.
std::set<Mode> path_modes(int path);
std::set<Mode> path_modes(std::initializer_list<int> paths);

/// Per-mode photon count above which a state is considered corrupt.
constexpr int kMaxOccupation = 8;

/// A Fock basis ket: photon counts per mode, stored sorted with no zero counts.
/// The empty vector is the vacuum.
class OccupationVector {
   public:
    OccupationVector() = default;
    OccupationVector(std::initializer_list<std::pair<Mode, int>> counts);

    int count(const Mode &mode) const;
    int total() const;
    bool empty() const {
        return entries_.empty();
    }
    const std::vector<std::pair<Mode, int>> &entries() const {
        return entries_;
    }

    /// Copy with the count at `mode` replaced. Throws std::domain_error above kMaxOccupation.
    OccupationVector with_count(const Mode &mode, int count) const;

    /// Splits into the part on `modes` and the part on every other mode.
    std::pair<OccupationVector, OccupationVector> split(const std::set<Mode> &modes) const;

    /// Union of counts; throws std::invalid_argument if the two share a mode.
    OccupationVector merged(const OccupationVector &other) const;

    /// Product of count! over all modes.
    double factorial_product() const;

    /// Canonical text "1.H:1,3.V:2"; the vacuum is "vac".
    std::string str() const;
    static OccupationVector parse(std::string_view text);

    auto operator<=>(const OccupationVector &) const = default;
    bool operator==(const OccupationVector &) const = default;

   private:
    std::vector<std::pair<Mode, int>> entries_;
};

/// Sparse multimode Fock state. Values are immutable; every operation returns
/// a new state. Amplitudes whose magnitude falls below the prune tolerance are
/// never stored.
class FockState {
   public:
    using Amplitude = std::complex<double>;
    using Map = std::map<OccupationVector, Amplitude>;
    static constexpr double kDefaultPruneTolerance = 1e-12;

    FockState() = default;
    explicit FockState(Map amplitudes, double prune_tolerance = kDefaultPruneTolerance);
    FockState(std::initializer_list<std::pair<const OccupationVector, Amplitude>> terms);

    const Map &amplitudes() const {
        return amplitudes_;
    }
    double prune_tolerance() const {
        return prune_tolerance_;
    }
    Amplitude amplitude(const OccupationVector &ket) const;
    size_t size() const {
        return amplitudes_.size();
    }
    bool is_zero() const {
        return amplitudes_.empty();
    }

    double norm_squared() const;
    double norm() const;
    /// Throws std::domain_error on the zero state.
    FockState normalized() const;

    std::set<Mode> occupied_modes() const;
    /// True when every ket carries exactly `n` photons.
    bool has_photon_number(int n) const;

    FockState operator+(const FockState &other) const;
    FockState operator-(const FockState &other) const;
    FockState operator*(Amplitude scale) const;

    /// Amplitude-wise equality within `tol`.
    bool approx_equal(const FockState &other, double tol) const;

   private:
    Map amplitudes_;
    double prune_tolerance_ = kDefaultPruneTolerance;
};

inline FockState operator*(FockState::Amplitude scale, const FockState &state) {
    return state * scale;
}

FockState vacuum();
FockState create(const FockState &state, const Mode &mode);
FockState annihilate(const FockState &state, const Mode &mode);
/// <a|b>, conjugate-linear in `a`.
std::complex<double> inner(const FockState &a, const FockState &b);
/// Product state of two states on disjoint mode sets.
FockState tensor(const FockState &a, const FockState &b);

/// Groups kets by their occupation on `modes`. Each entry maps a sub-ket on
/// `modes` to the (unnormalized) conditional state of the remaining modes.
std::map<OccupationVector, FockState> split_by_occupation(const FockState &state, const std::set<Mode> &modes);

/// Contracts `local` (a state on `local_modes`) against `state`, leaving the
/// unnormalized conditional state of the other modes: sum_k conj(local_k) <k|state>.
FockState project_local(const FockState &state, const FockState &local, const std::set<Mode> &local_modes);

/// Linear map on creation operators: column `in` of the matrix holds the
/// image of the creation operator of modes()[in] expanded over modes().
class ModeMap {
   public:
    ModeMap(std::vector<Mode> modes, Eigen::MatrixXcd matrix);
    static ModeMap identity(std::vector<Mode> modes);

    const std::vector<Mode> &modes() const {
        return modes_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    bool is_unitary(double tol = 1e-12) const;

    /// The map that applies `first` and then this one. Mode lists must match.
    ModeMap after(const ModeMap &first) const;
    /// Extends the map by identity on any mode of `extra` it does not cover.
    ModeMap embedded(const std::set<Mode> &extra) const;

   private:
    std::vector<Mode> modes_;
    Eigen::MatrixXcd matrix_;
};

/// Substitutes every creation operator by its image under `map` and re-expands.
/// Throws std::invalid_argument("uncovered mode") if the state occupies a mode
/// outside the map.
FockState apply_mode_map(const FockState &state, const ModeMap &map);

/// Hermitian, positive semidefinite, unit-trace matrix over a labelled basis.
struct DensityMatrix {
    std::vector<std::string> basis;
    Eigen::MatrixXcd matrix;

    size_t dim() const {
        return basis.size();
    }
    double trace() const;
    double purity() const;
    Eigen::VectorXd eigenvalues() const;
    /// Throws std::domain_error if any invariant fails.
    void validate(double hermitian_tol = 1e-12, double eigen_tol = 1e-10, double trace_tol = 1e-10) const;
};

/// Partial trace over every mode not in `keep_modes`. Basis labels are the
/// canonical text of the kept sub-kets, in canonical order.
DensityMatrix reduced_density(const FockState &state, const std::set<Mode> &keep_modes);

/// One line per ket: "<ket>  <re>  <im>", 17 significant digits, canonical order.
std::string serialize(const FockState &state);
FockState parse_state(std::string_view text);

}  // namespace qdh

#endif
