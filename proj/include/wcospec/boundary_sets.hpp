#pragma once

#include <cstddef>
#include <vector>

#include "wcospec/common.hpp"

namespace wcospec {

// Characteristic subsets of the circle grid theta_j = 2 pi j / M, stored as
// exact set-membership samples.

// Open dense surrogate: a union of intervals with geometrically decaying
// lengths (interval k has length eps * 2^-(k+2)) centered at an enumeration
// of rationals, eps scaled by bisection so the union's grid measure hits
// `measure` to within 1/M.  The enumeration leads with the grid rationals
// nearest the first `cover_steps` points of the orbit {j t mod 1} (so finite
// Birkhoff sups over the grid see the dense set at full height), then fills
// the largest remaining gaps, then runs through all reduced fractions with
// denominator <= 1024 (at that depth the lengths are below grid resolution
// and only exact grid hits remain).
std::vector<bool> open_dense_rational_union(std::size_t m, double measure, double t,
                                            std::size_t cover_steps = 64);

// Fat Cantor set: closed, nowhere dense, positive measure.  Stage s removes
// 2^(s-1) middle open intervals of length c 4^-s; c is scaled by bisection so
// the grid measure of the remaining set is `measure` to within 1/M.
std::vector<bool> fat_cantor_set(std::size_t m, double measure);

double grid_measure(const std::vector<bool>& set);

}  // namespace wcospec
