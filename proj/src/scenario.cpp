#include "gsmsec/scenario.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gsmsec::sim {

namespace {

std::string_view trim(std::string_view s) {
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
	return s;
}

[[noreturn]] void fail(size_t line_no, const std::string& what) {
	throw ScenarioParseError("scenario line " + std::to_string(line_no) + ": " + what);
}

bool parse_bool(std::string_view v, size_t line_no) {
	if (v == "on" || v == "true" || v == "1") return true;
	if (v == "off" || v == "false" || v == "0") return false;
	fail(line_no, "expected on/off, got '" + std::string(v) + "'");
}

uint64_t parse_u64(std::string_view v, size_t line_no, int base = 10) {
	uint64_t out = 0;
	auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
	if (ec != std::errc() || ptr != v.data() + v.size())
		fail(line_no, "bad number '" + std::string(v) + "'");
	return out;
}

bool valid_imsi(std::string_view s) {
	if (s.size() != 15) return false;
	for (char c : s)
		if (c < '0' || c > '9') return false;
	return true;
}

}  // namespace

ScenarioScript parse_scenario(std::string_view text) {
	ScenarioScript script;
	std::optional<SubscriberDecl> pending_subscriber;
	bool pending_has_key = false;
	std::string section;
	size_t line_no = 0;

	auto flush_subscriber = [&] {
		if (!pending_subscriber) return;
		if (!pending_has_key) fail(line_no, "subscriber missing ki/k");
		if (pending_subscriber->imsi.empty()) fail(line_no, "subscriber missing imsi");
		script.subscribers.push_back(*pending_subscriber);
		pending_subscriber.reset();
		pending_has_key = false;
	};

	std::string_view rest = text;
	while (!rest.empty()) {
		size_t nl = rest.find('\n');
		std::string_view raw = rest.substr(0, nl);
		rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
		++line_no;

		if (size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
		std::string_view line = trim(raw);
		if (line.empty()) continue;

		if (line.front() == '[') {
			if (line.back() != ']') fail(line_no, "unterminated section header");
			flush_subscriber();
			section = std::string(trim(line.substr(1, line.size() - 2)));
			if (section == "subscriber") pending_subscriber.emplace();
			else if (section != "scenario" && section != "attack" && section != "actions")
				fail(line_no, "unknown section [" + section + "]");
			continue;
		}

		if (section == "actions") {
			std::istringstream words{std::string(line)};
			std::string verb, imsi, hex;
			words >> verb >> imsi >> hex;
			Action action;
			if (verb == "authenticate") action.kind = Action::Kind::Authenticate;
			else if (verb == "reallocate_tmsi") action.kind = Action::Kind::ReallocateTmsi;
			else if (verb == "send_payload") action.kind = Action::Kind::SendPayload;
			else fail(line_no, "unknown action '" + verb + "'");
			if (!valid_imsi(imsi)) fail(line_no, "action needs a 15-digit imsi");
			action.imsi = imsi;
			if (action.kind == Action::Kind::SendPayload) {
				auto payload = from_hex(hex);
				if (!payload || payload->empty()) fail(line_no, "send_payload needs payload hex");
				action.payload = *payload;
			} else if (!hex.empty()) {
				fail(line_no, "unexpected argument '" + hex + "'");
			}
			script.actions.push_back(std::move(action));
			continue;
		}

		size_t eq = line.find('=');
		if (eq == std::string_view::npos) fail(line_no, "expected key = value");
		std::string key{trim(line.substr(0, eq))};
		std::string value{trim(line.substr(eq + 1))};

		if (section == "scenario") {
			if (key == "protocol") {
				if (value == "gsm") script.protocol = ScenarioScript::Protocol::Gsm;
				else if (value == "umts") script.protocol = ScenarioScript::Protocol::Umts;
				else fail(line_no, "protocol must be gsm or umts");
			} else if (key == "seed") {
				script.seed = parse_u64(value, line_no);
			} else {
				fail(line_no, "unknown scenario key '" + key + "'");
			}
		} else if (section == "subscriber") {
			if (!pending_subscriber) fail(line_no, "subscriber key outside [subscriber]");
			if (key == "imsi") {
				if (!valid_imsi(value)) fail(line_no, "imsi must be 15 decimal digits");
				pending_subscriber->imsi = value;
			} else if (key == "ki" || key == "k") {
				try {
					pending_subscriber->key = kasumi::CipherKey::from_hex(value);
				} catch (const std::invalid_argument&) {
					fail(line_no, "ki must be 32 hex digits");
				}
				pending_has_key = true;
			} else if (key == "tmsi") {
				if (value.size() != 8 || !from_hex(value)) fail(line_no, "tmsi must be 8 hex digits");
				pending_subscriber->tmsi = static_cast<uint32_t>(parse_u64(value, line_no, 16));
			} else if (key == "old_vlr") {
				pending_subscriber->old_vlr_knows_tmsi = parse_bool(value, line_no);
			} else {
				fail(line_no, "unknown subscriber key '" + key + "'");
			}
		} else if (section == "attack") {
			bool flag = parse_bool(value, line_no);
			if (key == "tamper_rand") script.attack.tamper_rand = flag;
			else if (key == "wrong_sres") script.attack.wrong_sres = flag;
			else if (key == "replay_triplet") script.attack.replay_triplet = flag;
			else if (key == "fake_autn") script.attack.fake_autn = flag;
			else if (key == "replay_av") script.attack.replay_av = flag;
			else fail(line_no, "unknown attack toggle '" + key + "'");
		} else {
			fail(line_no, "content before any section header");
		}
	}
	flush_subscriber();

	if (script.subscribers.empty()) fail(line_no, "no subscribers declared");
	if (script.actions.empty()) fail(line_no, "no actions declared");
	return script;
}

ScenarioScript load_scenario(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_scenario(buf.str());
}

std::string format_event(const TraceEvent& event) {
	char seq[8];
	std::snprintf(seq, sizeof seq, "%03u", event.seq);
	return std::string(seq) + " | " + event.actor + " | " + event.step + " | " + event.detail;
}

std::string format_trace(std::span<const TraceEvent> events) {
	std::string out;
	for (const auto& e : events) {
		out += format_event(e);
		out += '\n';
	}
	return out;
}

std::string verdict_string(VerdictKind verdict) {
	switch (verdict) {
		case VerdictKind::Verified: return "Verified";
		case VerdictKind::Failed: return "Failed";
		case VerdictKind::RejectMacFailure: return "Reject(MacFailure)";
		case VerdictKind::RejectSyncFailure: return "Reject(SyncFailure)";
	}
	return "?";
}

}  // namespace gsmsec::sim
