#pragma once

// Math-only umbrella; include boomtab/io.hpp separately, it needs json.hpp.
#include "boomtab/gf2n.hpp"
#include "boomtab/sbox.hpp"
#include "boomtab/tables.hpp"
#include "boomtab/closedform.hpp"
