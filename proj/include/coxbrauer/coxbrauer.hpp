#pragma once

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/cyclotomic.hpp>
#include <coxbrauer/ell_arith.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/generators.hpp>
#include <coxbrauer/homotopy.hpp>
#include <coxbrauer/linalg.hpp>
#include <coxbrauer/modular.hpp>
#include <coxbrauer/oracle.hpp>
#include <coxbrauer/root_data.hpp>
#include <coxbrauer/selftest.hpp>
#include <coxbrauer/tree_algebra.hpp>
#include <coxbrauer/tree_json.hpp>
