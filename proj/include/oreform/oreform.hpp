#pragma once

#include "oreform/algebra.hpp"
#include "oreform/base_poly.hpp"
#include "oreform/coeff_core.hpp"
#include "oreform/errors.hpp"
#include "oreform/field.hpp"
#include "oreform/format.hpp"
#include "oreform/involution.hpp"
#include "oreform/matrix.hpp"
#include "oreform/ore_poly.hpp"
#include "oreform/parser.hpp"
#include "oreform/upoly.hpp"
#include "oreform/module_gb.hpp"
#include "oreform/diagonalize.hpp"
#include "oreform/rat_ore.hpp"
#include "oreform/rational.hpp"
#include "oreform/jacobson.hpp"
#include "oreform/report.hpp"
