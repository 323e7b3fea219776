#pragma once

#include "viviani/errors.hpp"
#include "viviani/vector.hpp"
#include "viviani/hyperplane.hpp"
#include "viviani/polytope.hpp"
#include "viviani/fermat.hpp"
#include "viviani/duality.hpp"
#include "viviani/document.hpp"
#include "viviani/format.hpp"
#include "viviani/sampling.hpp"
#include "viviani/svg.hpp"
