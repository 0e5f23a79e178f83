#pragma once

#include "complexfn.hpp"
#include "quadrature.hpp"
#include "scalars.hpp"
#include "eisenstein.hpp"
#include "regint.hpp"
#include "products.hpp"
#include "coset.hpp"
#include "padic.hpp"
#include "mellin_arch.hpp"
#include "lattice.hpp"
#include "suites.hpp"
