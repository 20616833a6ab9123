#pragma once

#include "msindex/bounds.hpp"
#include "msindex/conjecture.hpp"
#include "msindex/errors.hpp"
#include "msindex/hypergraph.hpp"
#include "msindex/optimize.hpp"
#include "msindex/sampling.hpp"
#include "msindex/symfun.hpp"
