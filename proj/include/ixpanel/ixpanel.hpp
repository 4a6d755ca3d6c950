#pragma once

// Umbrella header: monthly price-index panel analysis toolkit.

#include "ixpanel/bilinear.hpp"
#include "ixpanel/errors.hpp"
#include "ixpanel/fit.hpp"
#include "ixpanel/forecast.hpp"
#include "ixpanel/linfit.hpp"
#include "ixpanel/models.hpp"
#include "ixpanel/month.hpp"
#include "ixpanel/ode.hpp"
#include "ixpanel/panel_io.hpp"
#include "ixpanel/periodogram.hpp"
#include "ixpanel/record_io.hpp"
#include "ixpanel/regression.hpp"
#include "ixpanel/rng.hpp"
#include "ixpanel/series.hpp"
#include "ixpanel/signs.hpp"
#include "ixpanel/simplex.hpp"
#include "ixpanel/stats.hpp"
#include "ixpanel/synth.hpp"
#include "ixpanel/version.hpp"
