#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "star/components.hpp"

namespace star {

template <class T>
class ComponentStore {
 public:
  T* get(EntityId id) {
    auto it = data_.find(id);
    return it == data_.end() ? nullptr : &it->second;
  }
  const T* get(EntityId id) const {
    auto it = data_.find(id);
    return it == data_.end() ? nullptr : &it->second;
  }
  T& put(EntityId id, T value) { return data_.insert_or_assign(id, std::move(value)).first->second; }
  void erase(EntityId id) { data_.erase(id); }
  bool contains(EntityId id) const { return data_.contains(id); }
  const std::map<EntityId, T>& items() const { return data_; }

  friend bool operator==(const ComponentStore&, const ComponentStore&) = default;

 private:
  std::map<EntityId, T> data_;
};

// Entity registry with one ordered store per component type. Iteration is
// always in ascending id order, and view() materialises a fresh list on every
// call so callers never hold a stale entity set across mutations.
class Registry {
 public:
  EntityId create() {
    const EntityId id = next_id_++;
    alive_.insert(id);
    return id;
  }

  void destroy(EntityId id) {
    if (!alive_.erase(id)) return;
    std::apply([id](auto&... store) { (store.erase(id), ...); }, stores_);
  }

  bool alive(EntityId id) const { return alive_.contains(id); }
  const std::set<EntityId>& entities() const { return alive_; }
  EntityId next_id() const { return next_id_; }

  template <class T>
  T& emplace(EntityId id, T value) {
    if (!alive(id)) throw std::logic_error("emplace on dead entity");
    return store<T>().put(id, std::move(value));
  }

  template <class T>
  void remove(EntityId id) {
    store<T>().erase(id);
  }

  template <class T>
  T* get(EntityId id) {
    return store<T>().get(id);
  }
  template <class T>
  const T* get(EntityId id) const {
    return store<T>().get(id);
  }

  template <class T>
  T& require(EntityId id) {
    T* v = get<T>(id);
    if (!v) throw std::logic_error("missing component");
    return *v;
  }
  template <class T>
  const T& require(EntityId id) const {
    const T* v = get<T>(id);
    if (!v) throw std::logic_error("missing component");
    return *v;
  }

  template <class... Ts>
  bool has(EntityId id) const {
    return (store<Ts>().contains(id) && ...);
  }

  template <class First, class... Rest>
  std::vector<EntityId> view() const {
    std::vector<EntityId> out;
    for (const auto& [id, _] : store<First>().items()) {
      if ((store<Rest>().contains(id) && ...)) out.push_back(id);
    }
    return out;
  }

  template <class T>
  const ComponentStore<T>& store() const {
    return std::get<ComponentStore<T>>(stores_);
  }

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  template <class T>
  ComponentStore<T>& store() {
    return std::get<ComponentStore<T>>(stores_);
  }

  EntityId next_id_ = 1;
  std::set<EntityId> alive_;
  std::tuple<ComponentStore<Position>, ComponentStore<UnitStats>, ComponentStore<UnitCount>,
             ComponentStore<MovementPoints>, ComponentStore<ActionPoints>,
             ComponentStore<FactionTag>, ComponentStore<StatusEffects>,
             ComponentStore<SkillState>, ComponentStore<ActionLock>, ComponentStore<TurnFlags>>
      stores_;
};

}  // namespace star
