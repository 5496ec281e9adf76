#pragma once

#include "tighthilb/analyzer.hpp"
#include "tighthilb/binomial.hpp"
#include "tighthilb/driver.hpp"
#include "tighthilb/dsl.hpp"
#include "tighthilb/error.hpp"
#include "tighthilb/expression.hpp"
#include "tighthilb/field.hpp"
#include "tighthilb/groebner.hpp"
#include "tighthilb/hilbert.hpp"
#include "tighthilb/linalg.hpp"
#include "tighthilb/monomial.hpp"
#include "tighthilb/polynomial.hpp"
#include "tighthilb/report.hpp"
#include "tighthilb/ring.hpp"
#include "tighthilb/tight_closure.hpp"
