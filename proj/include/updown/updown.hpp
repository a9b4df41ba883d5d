#pragma once

// Umbrella header for the up/down operator algebra library.

#include "updown/partition.hpp"
#include "updown/word.hpp"
#include "updown/normal_form.hpp"
#include "updown/rewrite.hpp"
#include "updown/trace_io.hpp"
#include "updown/subalgebra.hpp"
