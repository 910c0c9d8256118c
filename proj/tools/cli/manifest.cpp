#include "cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <memory>
#include <stdexcept>

namespace worldfunc::cli {

std::string sha256_hex(const std::string& data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

std::string iso_timestamp(std::chrono::system_clock::time_point t)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json build_manifest(const json& config, std::chrono::system_clock::time_point started,
                    std::chrono::system_clock::time_point finished, const std::vector<NamedOutput>& outputs)
{
    json digests = json::object();
    for (const auto& o : outputs) {
        digests[o.name] = sha256_hex(o.content);
    }
    return {{"schema_version", kSchemaVersion},
            {"tool", "worldfunc"},
            {"version", kToolVersion},
            {"config", config},
            {"seed", config.value("seed", std::uint64_t{0})},
            {"started_at", iso_timestamp(started)},
            {"finished_at", iso_timestamp(finished)},
            {"outputs", digests}};
}

}  // namespace worldfunc::cli
