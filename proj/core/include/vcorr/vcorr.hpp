#pragma once

#include "vcorr/atom.hpp"
#include "vcorr/dispersion.hpp"
#include "vcorr/dynamic_corr.hpp"
#include "vcorr/error.hpp"
#include "vcorr/oracle.hpp"
#include "vcorr/quadrature.hpp"
#include "vcorr/specfun.hpp"
#include "vcorr/static_corr.hpp"
#include "vcorr/tensor.hpp"
#include "vcorr/tensorops.hpp"
#include "vcorr/units.hpp"
#include "vcorr/version.hpp"
