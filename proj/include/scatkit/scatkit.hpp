#ifndef SCATKIT_SCATKIT_HPP
#define SCATKIT_SCATKIT_HPP

#include "scatkit/category.hpp"
#include "scatkit/complex.hpp"
#include "scatkit/constructions.hpp"
#include "scatkit/fixtures.hpp"
#include "scatkit/graph.hpp"
#include "scatkit/io.hpp"
#include "scatkit/maps.hpp"

#endif  // SCATKIT_SCATKIT_HPP
