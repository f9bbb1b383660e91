#pragma once

#include "fln/error.hpp"
#include "fln/truth_value.hpp"
#include "fln/signature.hpp"
#include "fln/formula.hpp"
#include "fln/printer.hpp"
#include "fln/parser.hpp"
#include "fln/theory.hpp"
#include "fln/universe.hpp"
#include "fln/hedge.hpp"
#include "fln/axioms.hpp"
#include "fln/proof.hpp"
#include "fln/saturation.hpp"
#include "fln/structure.hpp"
#include "fln/semantics.hpp"
