#pragma once

#include <string>

#include "unitsecant/tangent.hpp"

namespace unitsecant {

struct SvgOptions {
    int width = 640;
    int height = 480;
    int samples = 256;  // at least 16
    double margin = 24.0;

    void validate() const;
};

/**
 * Renders the curve over [t_min, t_max] projected onto the x-y plane, the point A of `report`,
 * and a tangent segment centred at A when the verdict is Tangent. Other verdicts get a text
 * annotation instead. Output bytes depend only on the inputs.
 */
std::string render_svg(const Curve& curve, const TangentReport& report, double t_min, double t_max,
                       const SvgOptions& options = {});

}  // namespace unitsecant
