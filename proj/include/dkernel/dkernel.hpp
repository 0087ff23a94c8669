#pragma once

#include "algebra.hpp"
#include "commands.hpp"
#include "derivation.hpp"
#include "dgroup.hpp"
#include "dme.hpp"
#include "error.hpp"
#include "groebner.hpp"
#include "hopf.hpp"
#include "ideal.hpp"
#include "map.hpp"
#include "matrix.hpp"
#include "monomial.hpp"
#include "ore.hpp"
#include "poly.hpp"
#include "polyparse.hpp"
#include "prolongation.hpp"
#include "report.hpp"
#include "scalar.hpp"
#include "specfile.hpp"
#include "vartable.hpp"
