#pragma once

#include "plancanon/blockcut.hpp"
#include "plancanon/code.hpp"
#include "plancanon/error.hpp"
#include "plancanon/export.hpp"
#include "plancanon/generators.hpp"
#include "plancanon/graph.hpp"
#include "plancanon/io.hpp"
#include "plancanon/iso.hpp"
#include "plancanon/khc.hpp"
#include "plancanon/planarity.hpp"
#include "plancanon/spqr.hpp"
#include "plancanon/weinberg.hpp"
