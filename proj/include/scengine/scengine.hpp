#pragma once

#include "scengine/errors.hpp"
#include "scengine/rational.hpp"
#include "scengine/number_theory.hpp"
#include "scengine/cyclotomic.hpp"
#include "scengine/finite_field.hpp"
#include "scengine/ff_matrix.hpp"
#include "scengine/group.hpp"
#include "scengine/conjugacy.hpp"
#include "scengine/group_spec.hpp"
#include "scengine/constructions.hpp"
#include "scengine/normal.hpp"
#include "scengine/character_table.hpp"
#include "scengine/sct.hpp"
#include "scengine/module_action.hpp"
#include "scengine/super_brauer.hpp"
#include "scengine/paper_verify.hpp"
