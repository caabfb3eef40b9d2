// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pag/balanced.hpp"
#include "pag/cli.hpp"
#include "pag/generators.hpp"
#include "pag/io.hpp"
#include "pag/maxflow.hpp"
#include "pag/model.hpp"
#include "pag/rational.hpp"
#include "pag/simplex.hpp"
#include "pag/solvers.hpp"
