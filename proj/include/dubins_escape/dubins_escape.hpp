// Copyright 2026 The Dubins Escape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUBINS_ESCAPE_DUBINS_ESCAPE_HPP_
#define DUBINS_ESCAPE_DUBINS_ESCAPE_HPP_

#include "dubins_escape/control.hpp"
#include "dubins_escape/error.hpp"
#include "dubins_escape/geometry.hpp"
#include "dubins_escape/hjb.hpp"
#include "dubins_escape/line_escape.hpp"
#include "dubins_escape/polygon_escape.hpp"
#include "dubins_escape/trajectory.hpp"

#endif  // DUBINS_ESCAPE_DUBINS_ESCAPE_HPP_
