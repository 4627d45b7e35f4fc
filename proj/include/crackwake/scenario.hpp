#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "crackwake/dipole.hpp"
#include "crackwake/error.hpp"
#include "crackwake/loading.hpp"
#include "crackwake/mapgen.hpp"

namespace crackwake {

// Scenario files are line-oriented blocks:
//
//   bimaterial { mu_plus = 1, mu_minus = 1 }
//   loading {
//       three_point { P = 1, a = 3, b = 0 }
//       force { face = "+", x1 = -2, p = 0.5 }
//   }
//   defect { kind = microcrack, d = 1, phi = 22.5deg, alpha = 0, la = 0.1 }
//   run { grid = 128x64, delta = 1e-6, out = "map.csv" }
//
// Entries are separated by newlines or commas; `#` starts a comment. Angle
// keys (phi, alpha) accept a `deg` suffix.

class ScenarioError : public ValidationError {
public:
    enum class Kind { syntax, unknown_key, missing_block, invalid };

    ScenarioError(Kind kind, int line, const std::string& message);
    Kind kind() const { return kind_; }
    int line() const { return line_; }

private:
    Kind kind_;
    int line_;
};

struct ThreePointSpec {
    double P = 1.0;
    double a = 1.0;
    double b = 0.0;

    bool operator==(const ThreePointSpec&) const = default;
};

using LoadItem = std::variant<PointForce, ThreePointSpec>;

struct LoadingSpec {
    std::vector<LoadItem> items;
    std::optional<DistributedLoad> distributed;
    double tip_clearance = kDefaultTipClearance;

    Loading build() const;
    bool operator==(const LoadingSpec&) const = default;
};

struct DefectSpec {
    Defect defect;
    // (d, phi) when the position was given in polar form.
    std::optional<std::pair<double, double>> polar;

    bool operator==(const DefectSpec&) const = default;
};

struct RunParams {
    std::optional<std::pair<int, int>> grid;
    std::optional<double> delta;
    std::optional<int> max_iter;
    std::optional<double> arrest_tol;
    std::optional<PairKind> pair;
    std::optional<double> d2;
    std::optional<std::string> out;
    std::optional<std::string> pgm;

    bool operator==(const RunParams&) const = default;
};

struct Scenario {
    Bimaterial bimaterial;
    LoadingSpec loading;
    std::vector<DefectSpec> defects;
    RunParams run;

    std::vector<Defect> defect_list() const;
    bool operator==(const Scenario&) const = default;
};

// Throws ScenarioError carrying the line of the first problem.
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::string& path);

// Canonical text that parses back to an equal Scenario.
std::string dump_scenario(const Scenario& scenario);

// "128x64" -> (128, 64); nullopt when malformed or not at least 2x2.
std::optional<std::pair<int, int>> parse_grid(std::string_view text);

}  // namespace crackwake
