#pragma once

#include "gpdelta/dense.hpp"
#include "gpdelta/energy.hpp"
#include "gpdelta/errors.hpp"
#include "gpdelta/evolution.hpp"
#include "gpdelta/faddeeva.hpp"
#include "gpdelta/grid.hpp"
#include "gpdelta/propagator.hpp"
#include "gpdelta/quadrature.hpp"
#include "gpdelta/solitons.hpp"
#include "gpdelta/spectra.hpp"
#include "gpdelta/tridiagonal.hpp"
#include "gpdelta/variational.hpp"
