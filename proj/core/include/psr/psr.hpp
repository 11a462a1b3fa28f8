#pragma once

#include "psr/bregman.hpp"
#include "psr/domain.hpp"
#include "psr/entropy.hpp"
#include "psr/errors.hpp"
#include "psr/geometry.hpp"
#include "psr/hyvarinen.hpp"
#include "psr/measure.hpp"
#include "psr/sampling.hpp"
#include "psr/scoring_rules.hpp"
