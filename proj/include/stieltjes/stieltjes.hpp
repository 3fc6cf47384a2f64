#pragma once

#include "stieltjes/arith_tables.hpp"
#include "stieltjes/asymptotics.hpp"
#include "stieltjes/cache.hpp"
#include "stieltjes/dirichlet.hpp"
#include "stieltjes/gamma.hpp"
#include "stieltjes/numeric.hpp"
#include "stieltjes/scan_report.hpp"
#include "stieltjes/weierstrass.hpp"
#include "stieltjes/zeta.hpp"
