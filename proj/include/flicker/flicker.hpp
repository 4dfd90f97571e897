#pragma once

#define FLICKER_VERSION_STRING "1.0.0"

#include "flicker/errors.hpp"
#include "flicker/palette.hpp"
#include "flicker/stochastic.hpp"
#include "flicker/frame.hpp"
#include "flicker/detector.hpp"
#include "flicker/reducer.hpp"
#include "flicker/phosphor.hpp"
#include "flicker/synth.hpp"
#include "flicker/image_io.hpp"
#include "flicker/sequence_io.hpp"
#include "flicker/report_io.hpp"
