//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_D2MIS_HPP
#define D2MIS_D2MIS_HPP

#include "d2mis/config.hpp"
#include "d2mis/parallel.hpp"
#include "d2mis/graph.hpp"
#include "d2mis/matrix_market.hpp"
#include "d2mis/generators.hpp"
#include "d2mis/hash.hpp"
#include "d2mis/status_word.hpp"
#include "d2mis/mis2.hpp"
#include "d2mis/verify.hpp"
#include "d2mis/coarsen.hpp"
#include "d2mis/coloring.hpp"
#include "d2mis/gauss_seidel.hpp"
#include "d2mis/krylov.hpp"

#endif
