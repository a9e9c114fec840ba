// Convenience umbrella: the whole library in one include.
#pragma once

#include "ftel/rat.hpp"
#include "ftel/poly.hpp"
#include "ftel/frac.hpp"
#include "ftel/tower.hpp"
#include "ftel/expr.hpp"
#include "ftel/linalg.hpp"
#include "ftel/ore.hpp"
#include "ftel/frame.hpp"
#include "ftel/hermite.hpp"
#include "ftel/laurent.hpp"
#include "ftel/polyred.hpp"
#include "ftel/telescope.hpp"
#include "ftel/problem.hpp"
