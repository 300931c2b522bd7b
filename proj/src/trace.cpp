/*
Copyright 2026 The gradadv Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "gradadv/trace.hpp"

#include <algorithm>

namespace gradadv {

const char* to_string(ProbeKind kind) {
    switch (kind) {
    case ProbeKind::trial: return "trial";
    case ProbeKind::nag_y: return "nag_y";
    case ProbeKind::nag_z: return "nag_z";
    case ProbeKind::bregman_seed: return "bregman_seed";
    }
    return "unknown";
}

ProbeKind probe_kind_from_string(const std::string& name) {
    for (ProbeKind kind : {ProbeKind::trial, ProbeKind::nag_y, ProbeKind::nag_z, ProbeKind::bregman_seed}) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    throw InvalidArgumentError("unknown probe kind '" + name + "'");
}

bool Trace::has_flag(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

} // namespace gradadv
