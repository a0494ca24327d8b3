#pragma once

// Umbrella header for the whole library.

#include "orthocell/box.hpp"
#include "orthocell/cell_complex.hpp"
#include "orthocell/convex_cell.hpp"
#include "orthocell/crystallographic.hpp"
#include "orthocell/error.hpp"
#include "orthocell/io.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/lattes.hpp"
#include "orthocell/linalg.hpp"
#include "orthocell/parallel.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/report.hpp"
#include "orthocell/symmetric_decomposition.hpp"
#include "orthocell/symmetry_group.hpp"
#include "orthocell/volume.hpp"
