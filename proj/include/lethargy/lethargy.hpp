#ifndef LETHARGY_LETHARGY_HPP
#define LETHARGY_LETHARGY_HPP

#include "lethargy/construction.hpp"
#include "lethargy/distance.hpp"
#include "lethargy/errors.hpp"
#include "lethargy/functionals.hpp"
#include "lethargy/scenario.hpp"
#include "lethargy/space_core.hpp"
#include "lethargy/targets.hpp"

#endif  // LETHARGY_LETHARGY_HPP
