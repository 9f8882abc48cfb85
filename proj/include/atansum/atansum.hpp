// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "atansum/algebra.hpp"
#include "atansum/angle.hpp"
#include "atansum/catalog.hpp"
#include "atansum/closedform.hpp"
#include "atansum/error.hpp"
#include "atansum/exact_scalar.hpp"
#include "atansum/families.hpp"
#include "atansum/lemma.hpp"
#include "atansum/numerics.hpp"
#include "atansum/parser.hpp"
#include "atansum/polynomial.hpp"
#include "atansum/report.hpp"
#include "atansum/sequences.hpp"
#include "atansum/telescope.hpp"
#include "atansum/verify.hpp"
