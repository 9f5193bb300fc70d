#pragma once

#include "abyss/algorithms/baire.hpp"
#include "abyss/algorithms/continuity.hpp"
#include "abyss/algorithms/cousin.hpp"
#include "abyss/algorithms/open_sets.hpp"
#include "abyss/algorithms/regulated.hpp"
#include "abyss/algorithms/suprema.hpp"
