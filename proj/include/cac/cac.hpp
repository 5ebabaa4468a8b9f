#pragma once

// Umbrella header for the conflict-avoiding code library.

#include <cac/chansim.hpp>
#include <cac/codes.hpp>
#include <cac/cyclotomic.hpp>
#include <cac/json_io.hpp>
#include <cac/modarith.hpp>
#include <cac/oracle.hpp>
#include <cac/report.hpp>
#include <cac/scan.hpp>
#include <cac/squares.hpp>
