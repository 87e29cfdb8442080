#pragma once

#include "stokestree/bench.hpp"
#include "stokestree/cluster_tree.hpp"
#include "stokestree/coulomb.hpp"
#include "stokestree/engine.hpp"
#include "stokestree/error_metric.hpp"
#include "stokestree/farfield.hpp"
#include "stokestree/kernels.hpp"
#include "stokestree/moments.hpp"
#include "stokestree/multi_index.hpp"
#include "stokestree/particle_io.hpp"
#include "stokestree/particles.hpp"
#include "stokestree/rng.hpp"
#include "stokestree/taylor_coeffs.hpp"
#include "stokestree/testcases.hpp"
#include "stokestree/vec3.hpp"
