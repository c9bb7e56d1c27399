/*
 * Copyright 2026 The elmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "elmatch/rng.hpp"

namespace elmatch {

std::string generator_id() {
  return "splitmix64-counter(gamma=0x9e3779b97f4a7c15,"
         "mix=0xbf58476d1ce4e5b9/0x94d049bb133111eb,"
         "stream=mix64(seed^mix64(r*gamma+0x632be59bd9b4e019)),"
         "uniform=((x>>11)+0.5)*2^-53)";
}

} // namespace elmatch
