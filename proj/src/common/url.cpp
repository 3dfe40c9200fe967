// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/common/url.hpp"

#include <stdexcept>

namespace iyp {

std::string BaseUrl::join(std::string_view path) const {
    std::string out = path_prefix;
    if (path.empty() || path.front() != '/') {
        out += '/';
    }
    out += path;
    return out;
}

BaseUrl parse_base_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        throw std::invalid_argument("URL has no scheme: " + std::string(url));
    }
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw std::invalid_argument("unsupported URL scheme: " + std::string(scheme));
    }
    const auto rest = url.substr(scheme_end + 3);
    const auto slash = rest.find('/');
    const auto authority = rest.substr(0, slash);
    if (authority.empty()) {
        throw std::invalid_argument("URL has no host: " + std::string(url));
    }
    BaseUrl out;
    out.scheme_host_port = std::string(scheme) + "://" + std::string(authority);
    if (slash != std::string_view::npos) {
        std::string prefix(rest.substr(slash));
        while (!prefix.empty() && prefix.back() == '/') {
            prefix.pop_back();
        }
        out.path_prefix = std::move(prefix);
    }
    return out;
}

}  // namespace iyp
