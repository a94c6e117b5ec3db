#pragma once

#include "config.hpp"
#include "exact_arith.hpp"
#include "identities.hpp"
#include "multiprecision.hpp"
#include "mzv.hpp"
#include "partial_sums.hpp"
#include "ratfunc.hpp"
#include "scale_series.hpp"
#include "stieltjes.hpp"
#include "stuffle.hpp"
