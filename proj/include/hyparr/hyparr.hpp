#pragma once

#include "hyparr/error.hpp"
#include "hyparr/rational.hpp"
#include "hyparr/linalg.hpp"
#include "hyparr/arrangement.hpp"
#include "hyparr/lattice.hpp"
#include "hyparr/feasibility.hpp"
#include "hyparr/consistency.hpp"
#include "hyparr/chambers.hpp"
#include "hyparr/obstruction.hpp"
#include "hyparr/builtins.hpp"
#include "hyparr/json_io.hpp"
