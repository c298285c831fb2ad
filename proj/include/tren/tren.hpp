#pragma once

#include "tren/action.hpp"
#include "tren/corrections.hpp"
#include "tren/effective_number.hpp"
#include "tren/errors.hpp"
#include "tren/io.hpp"
#include "tren/log_well.hpp"
#include "tren/oracle.hpp"
#include "tren/potential.hpp"
#include "tren/threshold.hpp"
