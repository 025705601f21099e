// Umbrella header for the library. The test-support reference module
// (oracle.hpp) is intentionally not included here.
#pragma once

#include "ltensor/decomposition.hpp"
#include "ltensor/determinant.hpp"
#include "ltensor/envelope.hpp"
#include "ltensor/error.hpp"
#include "ltensor/generate.hpp"
#include "ltensor/io.hpp"
#include "ltensor/norms.hpp"
#include "ltensor/parallel.hpp"
#include "ltensor/product.hpp"
#include "ltensor/random.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"
