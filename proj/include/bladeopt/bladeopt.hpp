// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bladeopt/analysis.hpp"
#include "bladeopt/baseline.hpp"
#include "bladeopt/blade_io.hpp"
#include "bladeopt/cma_es.hpp"
#include "bladeopt/config.hpp"
#include "bladeopt/deformation.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/evaluation.hpp"
#include "bladeopt/evaluator.hpp"
#include "bladeopt/external.hpp"
#include "bladeopt/feasibility.hpp"
#include "bladeopt/geometry.hpp"
#include "bladeopt/harness.hpp"
#include "bladeopt/hicks_henne.hpp"
#include "bladeopt/optimizer.hpp"
#include "bladeopt/particle_swarm.hpp"
#include "bladeopt/rng.hpp"
#include "bladeopt/search_space.hpp"
#include "bladeopt/surrogate.hpp"
