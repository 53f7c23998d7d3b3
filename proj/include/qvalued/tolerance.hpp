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

namespace qvalued::tol {

// Coordinate / cost equality and anchor coincidence.
inline constexpr double kEqual = 1e-12;

// Allowed slack when checking metric inequalities and recomputed quantities.
inline constexpr double kMetricSlack = 1e-9;

}  // namespace qvalued::tol
