// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hecke_bose/scalar.hpp"
#include "hecke_bose/lattice.hpp"
#include "hecke_bose/weyl.hpp"
#include "hecke_bose/params.hpp"
#include "hecke_bose/lattice_function.hpp"
#include "hecke_bose/laurent.hpp"
#include "hecke_bose/hamiltonian.hpp"
#include "hecke_bose/hecke.hpp"
#include "hecke_bose/propagation.hpp"
#include "hecke_bose/bethe.hpp"
#include "hecke_bose/verify.hpp"
