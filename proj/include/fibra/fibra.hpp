#pragma once

#include "fibra/arith.hpp"
#include "fibra/errors.hpp"
#include "fibra/polynomial.hpp"
#include "fibra/field.hpp"
#include "fibra/ordering.hpp"
#include "fibra/finite_field.hpp"
#include "fibra/factor.hpp"
#include "fibra/bivariate.hpp"
#include "fibra/ideal.hpp"
#include "fibra/padic.hpp"
#include "fibra/extension.hpp"
#include "fibra/cover.hpp"
#include "fibra/ramification.hpp"
#include "fibra/experiment.hpp"
#include "fibra/io.hpp"
