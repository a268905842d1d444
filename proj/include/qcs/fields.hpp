#pragma once
#include <string>

#include "qcs/dilatation.hpp"

namespace qcs {

// Built-in dilatation field families.
DilatationField make_zero();
DilatationField make_constant(double k, Rect box);
// μ(z) = dist(z)^alpha on the box; exact majorant min(t, height)^alpha.
DilatationField make_power_law(double alpha, Rect box);
// The smooth-but-not-Dini example field on the annulus 1 < |z| < 1.1.
DilatationField make_section5();
// Grid-backed field: CSV header re,im,mu_re,mu_im, bilinear interpolation,
// zero outside the grid hull.
DilatationField make_csv_grid(const std::string& path, Rect box);

// Parse "zero", "constant:k", "power_law:alpha", "section5",
// "csv_grid:path". Throws DomainError on malformed specs.
DilatationField parse_field_spec(const std::string& spec);

}  // namespace qcs
