// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace iyp {

/// A base URL split the way cpp-httplib wants it: "scheme://host:port" for
/// the client and a path prefix prepended to every request path.
struct BaseUrl {
    std::string scheme_host_port;
    std::string path_prefix;  // no trailing slash, may be empty

    [[nodiscard]] std::string join(std::string_view path) const;
};

/// Throws std::invalid_argument on anything that is not http(s)://host[:port][/prefix].
[[nodiscard]] BaseUrl parse_base_url(std::string_view url);

}  // namespace iyp
