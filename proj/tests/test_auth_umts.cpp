#include <doctest.h>

#include "gsmsec/auth_gsm.hpp"
#include "gsmsec/auth_umts.hpp"
#include "test_support.hpp"

using namespace gsmsec;
using testsupport::Rng;

namespace {

// Independent re-evaluation of the five demo f-functions.
umts::FsetOutput fset_oracle(const kasumi::CipherKey& k, const std::array<uint8_t, 16>& rand,
							 uint64_t sqn, uint16_t amf) {
	auto enc = [&k](uint64_t v) { return kasumi::encrypt_block(kasumi::Block64{v}, k).value; };
	uint64_t x_hi = enc(load_be64(rand.data()));
	uint64_t x_lo = enc(load_be64(rand.data() + 8));
	umts::FsetOutput out;
	out.mac = enc(x_hi ^ (((sqn & umts::kSqnMask) << 16) | amf));
	out.xres = enc(x_hi ^ x_lo);
	uint8_t ck[16], ik[16];
	store_be64(ck, enc(x_hi ^ 0x5555555555555555ull));
	store_be64(ck + 8, enc(x_lo ^ 0x5555555555555555ull));
	store_be64(ik, enc(x_hi ^ 0xAAAAAAAAAAAAAAAAull));
	store_be64(ik + 8, enc(x_lo ^ 0xAAAAAAAAAAAAAAAAull));
	out.ck = kasumi::CipherKey::from_bytes(ck);
	out.ik = kasumi::CipherKey::from_bytes(ik);
	out.ak = enc(x_lo) >> 16;
	return out;
}

const std::string kSubscriber =
	"[scenario]\nprotocol = umts\nseed = 11\n"
	"[subscriber]\nimsi = 001010123456789\nk = FEDCBA98765432100123456789ABCDEF\n";

sim::ScenarioScript scripted(const std::string& body) { return sim::parse_scenario(body); }

}  // namespace

TEST_CASE("demo f-set matches its oracle") {
	Rng rng;
	for (int i = 0; i < 200; ++i) {
		auto k = rng.key();
		auto rand = rng.block16();
		uint64_t sqn = rng.u64() & umts::kSqnMask;
		uint16_t amf = rng.u16();
		auto mine = umts::demo_fset(k, rand, sqn, amf);
		auto want = fset_oracle(k, rand, sqn, amf);
		REQUIRE(mine.mac == want.mac);
		REQUIRE(mine.xres == want.xres);
		REQUIRE(mine.ck == want.ck);
		REQUIRE(mine.ik == want.ik);
		REQUIRE(mine.ak == want.ak);
	}
}

TEST_CASE("amf feeds only the MAC") {
	Rng rng;
	auto k = rng.key();
	auto rand = rng.block16();
	auto a = umts::demo_fset(k, rand, 5, 0x0000);
	auto b = umts::demo_fset(k, rand, 5, 0xBEEF);
	CHECK(a.mac != b.mac);
	CHECK(a.xres == b.xres);
	CHECK(a.ck == b.ck);
	CHECK(a.ik == b.ik);
	CHECK(a.ak == b.ak);

	auto again = umts::demo_fset(k, rand, 5, 0x0000);
	CHECK(a.mac == again.mac);
}

TEST_CASE("autn packing round-trips") {
	Rng rng;
	for (int i = 0; i < 100; ++i) {
		uint64_t sqn_ak = rng.u64() & umts::kSqnMask;
		uint16_t amf = rng.u16();
		uint64_t mac = rng.u64();
		auto autn = umts::pack_autn(sqn_ak, amf, mac);
		uint64_t sqn_ak2, mac2;
		uint16_t amf2;
		umts::unpack_autn(autn, sqn_ak2, amf2, mac2);
		REQUIRE(sqn_ak == sqn_ak2);
		REQUIRE(amf == amf2);
		REQUIRE(mac == mac2);
	}
}

TEST_CASE("successive AVs carry SQN and SQN+1") {
	umts::UmtsHlr hlr;
	auto k = kasumi::CipherKey::from_hex("FEDCBA98765432100123456789ABCDEF");
	hlr.add_subscriber("001010123456789", k);
	sim::SeededRng rng(21);

	auto recover_sqn = [&k](const umts::UmtsAuthVector& av) {
		uint64_t sqn_ak, mac;
		uint16_t amf;
		umts::unpack_autn(av.autn, sqn_ak, amf, mac);
		return sqn_ak ^ umts::demo_fset(k, av.rand, 0, 0).ak;
	};

	auto av1 = hlr.generate_av("001010123456789", rng);
	auto av2 = hlr.generate_av("001010123456789", rng);
	CHECK(recover_sqn(av1) == 1);
	CHECK(recover_sqn(av2) == 2);

	// Components satisfy the f-set relations.
	uint64_t sqn = recover_sqn(av1);
	auto expect = fset_oracle(k, av1.rand, sqn, umts::kDefaultAmf);
	CHECK(av1.xres == expect.xres);
	CHECK(av1.ck == expect.ck);
	CHECK(av1.ik == expect.ik);
	uint64_t sqn_ak, mac;
	uint16_t amf;
	umts::unpack_autn(av1.autn, sqn_ak, amf, mac);
	CHECK(mac == expect.mac);
	CHECK(amf == umts::kDefaultAmf);

	CHECK_THROWS_AS(hlr.generate_av("000000000000000", rng), sim::UnknownSubscriber);
}

TEST_CASE("usim accepts honest AVs and hands back the network's keys") {
	umts::UmtsHlr hlr;
	auto k = kasumi::CipherKey::from_hex("FEDCBA98765432100123456789ABCDEF");
	hlr.add_subscriber("001010123456789", k);
	sim::SeededRng rng(22);
	umts::UsimState usim{k, 0};

	auto av = hlr.generate_av("001010123456789", rng);
	auto outcome = umts::usim_verify(usim, av.rand, av.autn);
	REQUIRE(std::holds_alternative<umts::UsimAccept>(outcome));
	const auto& accept = std::get<umts::UsimAccept>(outcome);
	CHECK(accept.res == av.xres);
	CHECK(accept.ck == av.ck);
	CHECK(accept.ik == av.ik);
	CHECK(usim.sqn_ms == 1);
}

TEST_CASE("replayed AV is rejected with SyncFailure") {
	umts::UmtsHlr hlr;
	auto k = kasumi::CipherKey::from_hex("FEDCBA98765432100123456789ABCDEF");
	hlr.add_subscriber("001010123456789", k);
	sim::SeededRng rng(23);
	umts::UsimState usim{k, 0};

	auto av = hlr.generate_av("001010123456789", rng);
	REQUIRE(std::holds_alternative<umts::UsimAccept>(umts::usim_verify(usim, av.rand, av.autn)));
	auto replay = umts::usim_verify(usim, av.rand, av.autn);
	REQUIRE(std::holds_alternative<umts::UsimRejectCause>(replay));
	CHECK(std::get<umts::UsimRejectCause>(replay) == umts::UsimRejectCause::SyncFailure);
}

TEST_CASE("flipped MAC bit is rejected with MacFailure") {
	umts::UmtsHlr hlr;
	auto k = kasumi::CipherKey::from_hex("FEDCBA98765432100123456789ABCDEF");
	hlr.add_subscriber("001010123456789", k);
	sim::SeededRng rng(24);
	umts::UsimState usim{k, 0};

	auto av = hlr.generate_av("001010123456789", rng);
	auto forged = av.autn;
	forged[15] ^= 0x01;
	auto outcome = umts::usim_verify(usim, av.rand, forged);
	REQUIRE(std::holds_alternative<umts::UsimRejectCause>(outcome));
	CHECK(std::get<umts::UsimRejectCause>(outcome) == umts::UsimRejectCause::MacFailure);
	CHECK(usim.sqn_ms == 0);  // rejected AVs must not advance the window
}

TEST_CASE("honest AKA run verifies with equal CK/IK on both sides") {
	auto script = scripted(kSubscriber +
						   "[actions]\nauthenticate 001010123456789\n"
						   "send_payload 001010123456789 DEADBEEF\n");
	auto result = umts::run_umts_aka(script);
	CHECK(result.verdict == sim::VerdictKind::Verified);
	REQUIRE(result.usim_ck);
	REQUIRE(result.vlr_ck);
	CHECK(*result.usim_ck == *result.vlr_ck);
	CHECK(*result.usim_ik == *result.vlr_ik);

	std::string trace = sim::format_trace(result.trace);
	CHECK(trace.find("step1_av_request") != std::string::npos);
	CHECK(trace.find("step2_av_delivery") != std::string::npos);
	CHECK(trace.find("core leg, clear") != std::string::npos);
	CHECK(trace.find("step3_challenge") != std::string::npos);
	CHECK(trace.find("step4_res_compare") != std::string::npos);
	CHECK(trace.find("f9_control_tag") != std::string::npos);
	CHECK(trace.find("mac ok") != std::string::npos);
	CHECK(trace.find("f8_user_payload") != std::string::npos);
	CHECK(trace.find("pt=DEADBEEF") != std::string::npos);
}

TEST_CASE("the AV delivery event serializes all five components") {
	auto script = scripted(kSubscriber + "[actions]\nauthenticate 001010123456789\n");
	auto result = umts::run_umts_aka(script);
	bool found = false;
	for (const auto& event : result.trace) {
		if (event.step != "step2_av_delivery") continue;
		found = true;
		for (const char* field : {"rand=", "xres=", "ck=", "ik=", "autn="})
			CHECK(event.detail.find(field) != std::string::npos);
	}
	CHECK(found);
}

TEST_CASE("fake AUTN run rejects with MacFailure") {
	auto script = scripted(kSubscriber +
						   "[attack]\nfake_autn = on\n[actions]\nauthenticate 001010123456789\n");
	auto result = umts::run_umts_aka(script);
	CHECK(result.verdict == sim::VerdictKind::RejectMacFailure);
	CHECK(sim::format_trace(result.trace).find("Reject(MacFailure)") != std::string::npos);
}

TEST_CASE("corrupted RES fails the VLR comparison") {
	auto script = scripted(kSubscriber +
						   "[attack]\nwrong_sres = on\n[actions]\nauthenticate 001010123456789\n");
	auto result = umts::run_umts_aka(script);
	CHECK(result.verdict == sim::VerdictKind::Failed);
	CHECK(sim::format_trace(result.trace).find("-> MISMATCH") != std::string::npos);
}

TEST_CASE("replayed AV run rejects with SyncFailure") {
	auto script = scripted(kSubscriber +
						   "[attack]\nreplay_av = on\n[actions]\n"
						   "authenticate 001010123456789\nauthenticate 001010123456789\n");
	auto result = umts::run_umts_aka(script);
	CHECK(result.verdict == sim::VerdictKind::RejectSyncFailure);
	CHECK(sim::format_trace(result.trace).find("replay_av") != std::string::npos);
}

TEST_CASE("GSM accepts the replay that UMTS rejects") {
	auto gsm_script = sim::parse_scenario(
		"[scenario]\nprotocol = gsm\nseed = 11\n"
		"[subscriber]\nimsi = 001010123456789\nki = FEDCBA98765432100123456789ABCDEF\n"
		"[attack]\nreplay_triplet = on\n"
		"[actions]\nauthenticate 001010123456789\nauthenticate 001010123456789\n");
	auto gsm_result = gsm::run_gsm_authentication(gsm_script);
	CHECK(gsm_result.verdict == sim::VerdictKind::Verified);

	auto umts_script = scripted(kSubscriber +
								"[attack]\nreplay_av = on\n[actions]\n"
								"authenticate 001010123456789\nauthenticate 001010123456789\n");
	auto umts_result = umts::run_umts_aka(umts_script);
	CHECK(umts_result.verdict == sim::VerdictKind::RejectSyncFailure);
}

TEST_CASE("no AV is accepted twice within a run") {
	auto script = scripted(kSubscriber +
						   "[actions]\nauthenticate 001010123456789\n"
						   "authenticate 001010123456789\nauthenticate 001010123456789\n");
	auto result = umts::run_umts_aka(script);
	CHECK(result.verdict == sim::VerdictKind::Verified);
	// Each accepted challenge must carry a distinct RAND.
	std::set<std::string> rands;
	for (const auto& event : result.trace) {
		if (event.step != "step3_challenge") continue;
		auto pos = event.detail.find("rand=");
		REQUIRE(pos != std::string::npos);
		REQUIRE(rands.insert(event.detail.substr(pos, 37)).second);
	}
	CHECK(rands.size() == 3);
}

TEST_CASE("subscriber K never appears in any trace") {
	const std::string k_hex = "FEDCBA98765432100123456789ABCDEF";
	for (const char* attacks : {"", "[attack]\nfake_autn = on\n", "[attack]\nreplay_av = on\n"}) {
		auto script = scripted(kSubscriber + attacks +
							   "[actions]\nauthenticate 001010123456789\n"
							   "authenticate 001010123456789\n");
		auto result = umts::run_umts_aka(script);
		CHECK(sim::format_trace(result.trace).find(k_hex) == std::string::npos);
	}
}

TEST_CASE("umts traces reproduce byte-for-byte") {
	auto script = scripted(kSubscriber +
						   "[actions]\nauthenticate 001010123456789\n"
						   "send_payload 001010123456789 0011223344\n");
	auto a = umts::run_umts_aka(script);
	auto b = umts::run_umts_aka(script);
	CHECK(sim::format_trace(a.trace) == sim::format_trace(b.trace));
}
