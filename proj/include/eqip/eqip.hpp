#ifndef EQIP_EQIP_HPP
#define EQIP_EQIP_HPP

#include "eqip/bench.hpp"
#include "eqip/errors.hpp"
#include "eqip/four_table.hpp"
#include "eqip/generator.hpp"
#include "eqip/instance.hpp"
#include "eqip/instance_io.hpp"
#include "eqip/oracle.hpp"
#include "eqip/rational.hpp"
#include "eqip/report.hpp"
#include "eqip/scalar.hpp"
#include "eqip/solve.hpp"
#include "eqip/tables.hpp"
#include "eqip/two_table.hpp"
#include "eqip/vector_equality.hpp"
#include "eqip/weighted_median.hpp"

#endif // EQIP_EQIP_HPP
