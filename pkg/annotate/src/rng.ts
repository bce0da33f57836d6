// Seeded PRNG (mulberry32). Every generated fixture value flows through one
// of these streams, which is what makes same-seed runs byte-identical.

export type Rng = () => number;

export function mulberry32(seed: number): Rng {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

// Stream for fixture `index` under run seed `seed`: depends on (seed, index)
// only, so fixture i is the same file no matter how many others are made.
export function fixtureRng(seed: number, index: number): Rng {
  return mulberry32((seed ^ Math.imul(index + 1, 0x9e3779b9)) >>> 0);
}

export function randInt(rng: Rng, lo: number, hi: number): number {
  return lo + Math.floor(rng() * (hi - lo));
}

export function randNormal(rng: Rng): number {
  // Box-Muller; rejects the u=0 corner so the log stays finite.
  let u = 0;
  while (u === 0) u = rng();
  return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * rng());
}
