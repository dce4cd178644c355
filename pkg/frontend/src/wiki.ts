/**
 * Source-page preview card, fetched client-side from the public
 * encyclopedia summary endpoint (the service never proxies it). A failed
 * fetch degrades to a plain link.
 */

export interface PageSummary {
  title: string;
  extract: string;
  thumbnailUrl: string | null;
}

export function summaryEndpoint(pageUrl: string): string | null {
  const match = pageUrl.match(/^https:\/\/([a-z-]+)\.wikipedia\.org\/wiki\/(.+)$/);
  if (!match) return null;
  return `https://${match[1]}.wikipedia.org/api/rest_v1/page/summary/${match[2]}`;
}

export async function fetchPageSummary(pageUrl: string): Promise<PageSummary | null> {
  const endpoint = summaryEndpoint(pageUrl);
  if (!endpoint) return null;
  try {
    const response = await fetch(endpoint);
    if (!response.ok) return null;
    const body = await response.json();
    return {
      title: body.title ?? pageUrl,
      extract: body.extract ?? "",
      thumbnailUrl: body.thumbnail?.source ?? null,
    };
  } catch {
    return null;
  }
}
