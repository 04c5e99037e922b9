#pragma once

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/io.hpp"
#include "profmatch/oracle.hpp"
#include "profmatch/reduce.hpp"
#include "profmatch/rmcheck.hpp"
#include "profmatch/solver.hpp"
#include "profmatch/version.hpp"
#include "profmatch/weight.hpp"
#include "profmatch/weights.hpp"
