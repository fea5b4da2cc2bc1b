// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include "circle_ops.hpp"
#include "core.hpp"
#include "euclid2.hpp"
#include "flat_moyal.hpp"
#include "io.hpp"
#include "j_integration.hpp"
#include "special.hpp"
#include "swkernel.hpp"
#include "symbol.hpp"
#include "verify.hpp"
