#pragma once

#include "msplit/analysis.hpp"
#include "msplit/block_matrix.hpp"
#include "msplit/blockcore.hpp"
#include "msplit/errors.hpp"
#include "msplit/generators.hpp"
#include "msplit/io.hpp"
#include "msplit/solver.hpp"
#include "msplit/splitting.hpp"
