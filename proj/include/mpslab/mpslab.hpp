#pragma once

#include "mpslab/error.hpp"
#include "mpslab/exact_rank.hpp"
#include "mpslab/fock.hpp"
#include "mpslab/io.hpp"
#include "mpslab/mps.hpp"
#include "mpslab/multiquad.hpp"
#include "mpslab/ordering.hpp"
#include "mpslab/parallel.hpp"
#include "mpslab/prng.hpp"
#include "mpslab/spectra.hpp"
#include "mpslab/states.hpp"
#include "mpslab/svd.hpp"
#include "mpslab/verify.hpp"
