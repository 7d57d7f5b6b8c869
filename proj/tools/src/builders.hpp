#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/bogovskii.hpp"
#include "orlicz/decomposition.hpp"
#include "orlicz/mesh.hpp"
#include "orlicz/projection.hpp"
#include "orlicz/stress.hpp"
#include "orlicz/young.hpp"
#include "params.hpp"

namespace orlicz::cli {

// Library parse failures rethrown as UsageError naming the flag.
YoungFunction young_arg(const std::string& spec, const std::string& flag);
std::pair<YoungFunction, YoungFunction> pair_arg(const std::string& spec, const std::string& flag);
StressLaw law_arg(const std::string& spec, const std::string& flag);

// "disk" (unit disk), "square" (unit square) or a JSON polygon file
// {"vertices": [[x, y], ...], "ball": {"center": [x, y], "radius": r}}.
StarDomain domain_arg(const std::string& spec, const std::string& flag);

// [0,2]x[0,1] followed by [0,1]x[0,2].
DomainDecomposition lshape();

// A function id or a CSV path (x, y, measure, v0) whose rows hit the cells of dom.
SampledField input_field(const std::string& spec, const std::shared_ptr<const CellDomain>& dom, const std::string& flag);

// "square:1/4,1/8" or a JSON polygon file {"vertices": [...], "h": [...]}.
std::vector<std::shared_ptr<const Triangulation>> meshes_arg(const std::string& spec, const std::string& flag);

// Quadrature from an integer (ray nodes) or an object of QuadratureSpec fields.
QuadratureSpec quad_arg(const Params& p);

// Smooth velocity vanishing on the boundary of the unit square.
VectorFunction manufactured_velocity();

// int_S div u for every triangle, as the flux through its edges (12-point Gauss).
std::vector<double> exact_element_divergence(const Triangulation& mesh, const VectorFunction& u);

}  // namespace orlicz::cli
