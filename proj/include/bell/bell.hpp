#pragma once

#include "bell/analysis.hpp"
#include "bell/binary_stream.hpp"
#include "bell/bounds.hpp"
#include "bell/correlation.hpp"
#include "bell/correlation_function.hpp"
#include "bell/gedanken.hpp"
#include "bell/identities.hpp"
#include "bell/lhv.hpp"
#include "bell/rng.hpp"
#include "bell/singlet.hpp"
#include "bell/sources.hpp"
#include "bell/stream_io.hpp"
#include "bell/telegraph.hpp"
