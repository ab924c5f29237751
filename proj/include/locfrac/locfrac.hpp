#pragma once

#include "locfrac/checks.hpp"
#include "locfrac/io.hpp"
