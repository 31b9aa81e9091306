#ifndef CVD_IDENTITIES_HPP
#define CVD_IDENTITIES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cvd/census.hpp"
#include "cvd/facets.hpp"

namespace cvd {

struct VerificationRecord {
    std::string identity;
    std::string params;  // e.g. "k=2" or "c=3 j=0"
    long long lhs = 0;
    long long rhs = 0;
    std::string relation;  // "=", "<=", ">="
    bool pass = false;
};

struct VerificationReport {
    std::vector<VerificationRecord> records;

    bool all_pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }
    void add(std::string identity, std::string params, long long lhs, std::string relation,
             long long rhs);
};

void print_report(std::ostream& out, const VerificationReport& report);

struct VerifyOptions {
    int subset_checks = 20;
    std::uint64_t subset_seed = 12345;
};

// Evaluates every exact identity and bound applicable to the metric of the
// site set. Euclidean inputs need the lifted 3D facet table; pass nullptr
// under L-infinity, where only inequality records are produced.
VerificationReport verify_identities(const ColoredSiteSet& sites, const CensusTable& table,
                                     const FacetTable& facets2d,
                                     const FacetTable* facets3d_of_lift,
                                     const VerifyOptions& options = {});

}  // namespace cvd

#endif
