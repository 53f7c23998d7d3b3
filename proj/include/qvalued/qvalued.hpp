/*
 * Copyright 2026 The qvalued Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "qvalued/assignment.hpp"
#include "qvalued/counterexample.hpp"
#include "qvalued/errors.hpp"
#include "qvalued/extend.hpp"
#include "qvalued/lipmap.hpp"
#include "qvalued/one_center.hpp"
#include "qvalued/point.hpp"
#include "qvalued/qspace.hpp"
#include "qvalued/search.hpp"
#include "qvalued/tolerance.hpp"
