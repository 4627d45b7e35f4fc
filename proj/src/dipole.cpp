#include "crackwake/dipole.hpp"

#include <array>
#include <utility>

namespace crackwake {

namespace {

constexpr std::array<std::pair<DefectKind, std::string_view>, 7> kNames{{
    {DefectKind::elastic_ellipse, "elastic_ellipse"},
    {DefectKind::rigid_ellipse, "rigid_ellipse"},
    {DefectKind::microcrack, "microcrack"},
    {DefectKind::elliptic_void, "elliptic_void"},
    {DefectKind::rigid_line, "rigid_line"},
    {DefectKind::soft_line, "soft_line"},
    {DefectKind::stiff_line, "stiff_line"},
}};

}  // namespace

std::string_view to_string(DefectKind kind) {
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<DefectKind> parse_defect_kind(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

Definiteness expected_definiteness(const Defect& d) {
    switch (d.kind) {
        case DefectKind::microcrack:
        case DefectKind::elliptic_void:
            return Definiteness::negative;
        case DefectKind::soft_line:
            return d.kappa == 0.0 ? Definiteness::zero : Definiteness::negative;
        case DefectKind::rigid_ellipse:
        case DefectKind::rigid_line:
        case DefectKind::stiff_line:
            return Definiteness::positive;
        case DefectKind::elastic_ellipse:
            if (d.mu_star > 1.0) return Definiteness::negative;
            if (d.mu_star < 1.0) return Definiteness::positive;
            return Definiteness::zero;
    }
    return Definiteness::zero;
}

}  // namespace crackwake
