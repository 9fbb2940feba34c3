#pragma once

// Umbrella header.

#include "flasque/integer.hpp"
#include "flasque/matrix.hpp"
#include "flasque/zlinalg.hpp"
#include "flasque/abelian.hpp"
#include "flasque/errors.hpp"
#include "flasque/random.hpp"
#include "flasque/group.hpp"
#include "flasque/group_catalog.hpp"
#include "flasque/module.hpp"
#include "flasque/cohomology.hpp"
#include "flasque/resolution.hpp"
#include "flasque/reductive.hpp"
#include "flasque/complexes.hpp"
#include "flasque/random_modules.hpp"
#include "flasque/io.hpp"
#include "flasque/report.hpp"
