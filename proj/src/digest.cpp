#include "star/digest.hpp"

#include <array>
#include <cstdint>
#include <vector>

#include <openssl/evp.h>

namespace star {
namespace {

class Encoder {
 public:
  void u8(std::uint64_t v) { bytes_.push_back(static_cast<std::uint8_t>(v)); }
  void i64(std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void str(const std::string& s) {
    i64(static_cast<std::int64_t>(s.size()));
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }
  void tag(char t) { u8(static_cast<unsigned char>(t)); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

std::string sha256_hex(const std::vector<std::uint8_t>& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

}  // namespace

std::string snapshot_digest(const WorldState& w) {
  Encoder e;
  e.tag('W');
  e.u8(static_cast<std::uint8_t>(w.mode));
  e.i64(static_cast<std::int64_t>(w.seed));
  e.i64(w.turn_number);
  e.i64(w.active_side ? *w.active_side : -1);
  e.i64(w.clock_ms);
  e.i64(w.regen_carry_ms);
  e.i64(w.horizon_turns);
  e.i64(w.horizon_ms);
  for (const FactionState& f : w.factions) {
    e.tag('F');
    e.str(f.name);
    e.i64(f.manpower);
    e.i64(f.supplies);
    e.i64(f.construction_points);
    e.i64(f.initial_soldiers);
    e.u8(f.forfeited);
  }
  e.tag('O');
  e.u8(w.outcome.has_value());
  if (w.outcome) {
    e.i64(w.outcome->winner ? *w.outcome->winner : -1);
    // Stored as parts-per-billion so no floating bytes reach the hash.
    e.i64(static_cast<std::int64_t>(w.outcome->surviving_fraction * 1e9 + 0.5));
    e.i64(w.outcome->duration);
    e.u8(static_cast<std::uint8_t>(w.outcome->reason));
  }

  const TerrainGrid& g = w.terrain;
  e.tag('T');
  e.i64(g.width());
  e.i64(g.height());
  for (std::size_t i = 0; i < g.size(); ++i) {
    e.u8(static_cast<std::uint8_t>(g.tiles()[i]));
    e.u8(static_cast<std::uint8_t>(g.owners()[i]));
    e.u8(g.fortifications()[i]);
  }

  const Registry& r = w.registry;
  e.tag('R');
  e.i64(r.next_id());
  for (const EntityId id : r.entities()) {
    e.tag('E');
    e.i64(id);
    if (const auto* p = r.get<Position>(id)) {
      e.tag('p');
      e.i64(p->at.col);
      e.i64(p->at.row);
    }
    if (const auto* s = r.get<UnitStats>(id)) {
      e.tag('s');
      e.u8(static_cast<std::uint8_t>(s->type));
      e.i64(s->attack);
      e.i64(s->defense);
      e.i64(s->attack_range);
      e.i64(s->vision_range);
    }
    const auto gauge = [&e](char t, const Gauge* gp) {
      if (!gp) return;
      e.tag(t);
      e.i64(gp->current);
      e.i64(gp->max);
    };
    gauge('c', r.get<UnitCount>(id));
    gauge('m', r.get<MovementPoints>(id));
    gauge('a', r.get<ActionPoints>(id));
    if (const auto* f = r.get<FactionTag>(id)) {
      e.tag('f');
      e.i64(f->side);
    }
    if (const auto* st = r.get<StatusEffects>(id)) {
      e.tag('x');
      e.i64(static_cast<std::int64_t>(st->active.size()));
      for (const auto& [status, turns] : st->active) {
        e.u8(static_cast<std::uint8_t>(status));
        e.i64(turns);
      }
    }
    if (const auto* sk = r.get<SkillState>(id)) {
      e.tag('k');
      e.i64(sk->skill_points);
      e.i64(static_cast<std::int64_t>(sk->cooldowns.size()));
      for (const auto& [name, turns] : sk->cooldowns) {
        e.str(name);
        e.i64(turns);
      }
    }
    if (const auto* l = r.get<ActionLock>(id)) {
      e.tag('l');
      e.i64(l->locked_until_ms);
    }
    if (const auto* t = r.get<TurnFlags>(id)) {
      e.tag('t');
      e.u8(t->rested);
      e.i64(t->ap_spent);
    }
  }
  return sha256_hex(e.bytes());
}

}  // namespace star
