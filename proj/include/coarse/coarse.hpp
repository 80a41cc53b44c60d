#pragma once

#include "coarse/acceptance.hpp"
#include "coarse/covers/combinators.hpp"
#include "coarse/covers/lattice_covers.hpp"
#include "coarse/covers/saturated_union.hpp"
#include "coarse/covers/shift_union.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/experiment.hpp"
#include "coarse/io/json.hpp"
#include "coarse/ordinal.hpp"
#include "coarse/partition.hpp"
#include "coarse/verify/control.hpp"
#include "coarse/verify/oracle1d.hpp"
#include "coarse/verify/verify.hpp"
#include "coarse/verify/witness.hpp"
