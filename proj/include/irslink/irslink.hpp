// SPDX-License-Identifier: Apache-2.0
//
// irslink — link-level simulator for a point-to-point link aided by one
// active and one passive intelligent reflecting surface.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include "irslink/units.hpp"
#include "irslink/params.hpp"
#include "irslink/geometry.hpp"
#include "irslink/channel.hpp"
#include "irslink/reflection.hpp"
#include "irslink/link_eval.hpp"
#include "irslink/placement.hpp"
#include "irslink/sweep.hpp"
