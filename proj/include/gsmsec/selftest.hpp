/**@file
	@brief Runtime self-test over the embedded conformance vectors, the
	S-box permutation checks and a codec round-trip suite.
*/

#ifndef GSMSEC_SELFTEST_H
#define GSMSEC_SELFTEST_H

#include <string>
#include <vector>

namespace gsmsec::selftest {

struct SuiteResult {
	std::string name;
	int passed = 0;
	int failed = 0;
	std::vector<std::string> failed_ids;
};

struct Report {
	std::vector<SuiteResult> suites;

	bool all_passed() const {
		for (const auto& s : suites)
			if (s.failed) return false;
		return true;
	}
};

Report run();

}  // namespace gsmsec::selftest

#endif
