// Copyright 2026 The Chaoscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHAOSCOPE_GAME_IO_H_
#define CHAOSCOPE_GAME_IO_H_

// JSON game files. Three shapes are accepted, all indices 0-based:
//
//   {"kind":"bimatrix","A":[[...]],"B":[[...]]}
//   {"kind":"normal_form","strategy_counts":[n1,...,nN],
//    "payoffs":[<nested n1 x ... x nN array for player 0>, ...]}
//   {"kind":"graphical","strategy_counts":[...],
//    "edges":[{"i":0,"k":1,"H_ik":[[...]],"H_ki":[[...]]}, ...]}
//
// Dual points are a list of per-player vectors, e.g. [[0.1,-0.1],[0,0]], or
// the string "uniform" for the all-zero point. Every parse error is an
// InvalidArgument whose message starts with the offending field.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscope/game.h"

namespace chaoscope {

std::string ReadTextFile(const std::string& path);

Game ParseGame(std::string_view json_text);
Game LoadGameFile(const std::string& path);

// Inverse of ParseGame; emits the same schema.
std::string GameToJson(const Game& game);

DualPoint ParseDualPoint(std::string_view json_text,
                         std::span<const int> strategy_counts);
std::vector<DualPoint> ParseDualPoints(std::string_view json_text,
                                       std::span<const int> strategy_counts);

// A nested array of the given shape, or {"potential": <nested array>}.
Tensor ParseTensor(std::string_view json_text, std::span<const int> shape);

}  // namespace chaoscope

#endif  // CHAOSCOPE_GAME_IO_H_
