#pragma once

#include <string>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

enum class Coloring { None, Sigma, Elongation, Flex };

Coloring parse_coloring(const std::string& name);

// Sigma and elongation take one value per edge id; flex takes 2v vertex
// displacements drawn as arrows. Mismatched lengths throw InputError.
std::string render_svg(const Truss& truss, Coloring coloring = Coloring::None,
                       const std::vector<double>& values = {});

}  // namespace trusskit
