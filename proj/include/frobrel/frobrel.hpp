#pragma once

#include "frobrel/error.hpp"
#include "frobrel/finrel.hpp"
#include "frobrel/frob2.hpp"
#include "frobrel/frob3.hpp"
#include "frobrel/diagrams.hpp"
#include "frobrel/laws.hpp"
#include "frobrel/bridges.hpp"
#include "frobrel/search.hpp"
#include "frobrel/frl.hpp"
