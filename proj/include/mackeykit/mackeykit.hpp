#pragma once

#include "mackeykit/io.hpp"
#include "mackeykit/ktheory.hpp"
#include "mackeykit/promonoidal.hpp"
#include "mackeykit/spectral.hpp"
