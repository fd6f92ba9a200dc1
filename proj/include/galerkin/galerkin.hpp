#pragma once

#include "galerkin/basis.hpp"
#include "galerkin/bvp.hpp"
#include "galerkin/coefficients.hpp"
#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"
#include "galerkin/forcing.hpp"
#include "galerkin/integral.hpp"
#include "galerkin/io.hpp"
#include "galerkin/linalg.hpp"
#include "galerkin/nonlinear.hpp"
#include "galerkin/quadrature.hpp"
