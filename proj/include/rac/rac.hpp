#pragma once

#include "rac/core.hpp"
#include "rac/eval.hpp"
#include "rac/io.hpp"
#include "rac/linkage.hpp"
#include "rac/mst.hpp"
#include "rac/strategy.hpp"
