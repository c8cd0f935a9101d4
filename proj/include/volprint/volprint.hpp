// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "volprint/crosstalk.hpp"
#include "volprint/design.hpp"
#include "volprint/error.hpp"
#include "volprint/film_stack.hpp"
#include "volprint/geometry.hpp"
#include "volprint/image.hpp"
#include "volprint/optics.hpp"
#include "volprint/parallel.hpp"
#include "volprint/png_io.hpp"
#include "volprint/point_cloud.hpp"
#include "volprint/projection.hpp"
#include "volprint/slicer.hpp"
#include "volprint/volume.hpp"
