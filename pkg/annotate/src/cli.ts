#!/usr/bin/env node
// annotate: sidecar tooling for the aesthetic guidance engine.
//   annotate make-fixtures --seed 1 --count 3 --dim 8 --out fixtures/
//   annotate extract --fixture --dim 8 --out sidecars/ img1.bmp img2.bmp

import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { extract } from './extract.js';
import { makeFixtures } from './fixtures.js';

yargs(hideBin(process.argv))
  .scriptName('annotate')
  .command(
    'make-fixtures',
    'write seeded synthetic fixture images and sidecars',
    y =>
      y
        .option('seed', { type: 'number', default: 1 })
        .option('count', { type: 'number', default: 3 })
        .option('dim', { type: 'number', default: 8 })
        .option('out', { type: 'string', demandOption: true }),
    args => {
      const names = makeFixtures({
        seed: args.seed,
        count: args.count,
        dim: args.dim,
        out: args.out,
      });
      console.log(`wrote ${names.length} fixtures to ${args.out}`);
    },
  )
  .command(
    'extract <images...>',
    'extract sidecar fields from images',
    y =>
      y
        .positional('images', { type: 'string', array: true, demandOption: true })
        .option('out', { type: 'string', demandOption: true })
        .option('fixture', {
          type: 'boolean',
          default: false,
          describe: 'pixel-statistic extractors, no model assets',
        })
        .option('dim', { type: 'number', default: 8 })
        .option('model', {
          type: 'string',
          array: true,
          default: [] as string[],
          describe: 'name=identifier model selections',
        }),
    args => {
      const models: Record<string, string> = {};
      for (const pair of args.model) {
        const eq = pair.indexOf('=');
        if (eq < 1) throw new Error(`--model expects name=identifier, got "${pair}"`);
        models[pair.slice(0, eq)] = pair.slice(eq + 1);
      }
      const result = extract(args.images, {
        out: args.out,
        fixtureMode: args.fixture,
        dim: args.dim,
        models,
      });
      console.log(`wrote ${result.written.length} sidecars to ${args.out}` +
        (result.failed.length ? `, ${result.failed.length} failed` : ''));
    },
  )
  .demandCommand(1)
  .strict()
  .fail((msg, err) => {
    console.error(msg ?? (err instanceof Error ? err.message : String(err)));
    process.exit(1);
  })
  .parse();
