#pragma once

#include "algebra.hpp"
#include "cli.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "identity.hpp"
#include "nonclassical.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"
#include "spectrum.hpp"
#include "states.hpp"
#include "verify.hpp"
