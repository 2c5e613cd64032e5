// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <vector>

#include "oracles.hpp"
#include "radgeom/body.hpp"

namespace testutil {

inline radgeom::Point pt(std::initializer_list<double> coords) {
    radgeom::Point p(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) p[i++] = c;
    return p;
}

// The standing 2D fixture: unit disks centered (+-0.5, 0). Inner radius
// 0.5 at the origin, farthest boundary points (0, +-sqrt(0.75)).
inline radgeom::Body two_unit_disks() {
    return radgeom::Body(radgeom::SpaceForm(0.0, 2),
                         {{pt({0.5, 0.0}), 1.0}, {pt({-0.5, 0.0}), 1.0}});
}

inline std::vector<oracle::Disk> to_disks(const radgeom::Body& body) {
    std::vector<oracle::Disk> out;
    for (const auto& b : body.balls()) out.push_back({b.center[0], b.center[1], b.radius});
    return out;
}

}  // namespace testutil
