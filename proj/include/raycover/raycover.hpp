#pragma once

// Umbrella header: the whole toolkit.

#include "raycover/rational.hpp"
#include "raycover/geometry.hpp"
#include "raycover/chord_graph.hpp"
#include "raycover/ray_embed.hpp"
#include "raycover/needle_reduce.hpp"
#include "raycover/cover_solver.hpp"
#include "raycover/curve_simplify.hpp"
#include "raycover/io.hpp"
#include "raycover/svg.hpp"
#include "raycover/pipeline.hpp"
