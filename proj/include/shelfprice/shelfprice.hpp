#pragma once

#include "shelfprice/baseline.hpp"
#include "shelfprice/bounds.hpp"
#include "shelfprice/buyer.hpp"
#include "shelfprice/candidates.hpp"
#include "shelfprice/dp_solver.hpp"
#include "shelfprice/errors.hpp"
#include "shelfprice/experiments.hpp"
#include "shelfprice/io.hpp"
#include "shelfprice/model.hpp"
#include "shelfprice/money.hpp"
#include "shelfprice/oracle.hpp"
#include "shelfprice/parallel.hpp"
